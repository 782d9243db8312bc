#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "liouville/bubble.hpp"
#include "liouville/disk_ops.hpp"
#include "liouville/green.hpp"
#include "oracles.hpp"

using namespace liouville;

TEST_CASE("grid construction and invariants") {
  CHECK_THROWS(DiskGrid(4, 16));
  CHECK_THROWS(DiskGrid(16, 15));
  CHECK_THROWS(DiskGrid(16, 16, 0.0));

  for (double cluster : {1.0, 0.4, 0.1}) {
    auto grid = make_grid(24, 32, cluster);
    CHECK(grid->radii()(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(grid->min_radius() > 0.0);
    CHECK(grid->radial_area_weights().minCoeff() > 0.0);
    DiskField one(grid);
    one.values.setOnes();
    CHECK(std::abs(integrate_disk(one) - kPi) <= 1e-12);
  }
}

TEST_CASE("polar Laplacian on closed forms") {
  // low-degree polynomial data: exact up to roundoff of the dense spectral
  // operators, which stays under 1e-10 at this size
  auto grid = make_grid(12, 16);
  {
    DiskField f = sample(grid, [](const Point2& x) { return 1.0 - x.squaredNorm(); });
    DiskField lap = laplacian(f);
    CHECK((lap.values.array() + 4.0).abs().maxCoeff() <= 1e-10);
  }
  {
    DiskField f = sample(grid, [](const Point2& x) { return x(0); });  // r cos(theta)
    DiskField lap = laplacian(f);
    CHECK(lap.values.cwiseAbs().maxCoeff() <= 1e-10);
  }
  {
    auto grid32 = make_grid(32, 32);
    DiskField f = sample(grid32, [](const Point2& x) {
      const double r = x.norm(), th = std::atan2(x(1), x(0));
      return (1.0 - r * r) * r * r * r * std::cos(3.0 * th);
    });
    DiskField lap = laplacian(f);
    DiskField expect = sample(grid32, [](const Point2& x) {
      const double r = x.norm(), th = std::atan2(x(1), x(0));
      return -16.0 * r * r * r * std::cos(3.0 * th);
    });
    CHECK((lap.values - expect.values).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("Dirichlet Poisson solve") {
  auto grid = make_grid(24, 32);
  DiskPoisson poisson(grid);
  {
    DiskField rhs(grid);
    rhs.values.setConstant(4.0);
    DiskField u = poisson.solve(rhs);
    DiskField expect = sample(grid, [](const Point2& x) { return 1.0 - x.squaredNorm(); });
    CHECK((u.values - expect.values).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(u.values.row(0).cwiseAbs().maxCoeff() == 0.0);
  }
  {
    // manufactured u = (1-r^2) r^2 cos(2 theta), -Delta u = 12 r^2 cos(2 theta)
    DiskField rhs = sample(grid, [](const Point2& x) {
      const double r2 = x.squaredNorm();
      const double th = std::atan2(x(1), x(0));
      return 12.0 * r2 * std::cos(2.0 * th);
    });
    DiskField u = poisson.solve(rhs);
    DiskField expect = sample(grid, [](const Point2& x) {
      const double r2 = x.squaredNorm();
      const double th = std::atan2(x(1), x(0));
      return (1.0 - r2) * r2 * std::cos(2.0 * th);
    });
    CHECK((u.values - expect.values).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("Poisson round trip and spectral convergence") {
  auto grid = make_grid(20, 32);
  DiskPoisson poisson(grid);
  DiskField rhs = sample(grid, [](const Point2& x) {
    return std::exp(-2.0 * x.squaredNorm()) * (1.0 + x(0));
  });
  DiskField u = poisson.solve(rhs);
  DiskField back = laplacian(u);
  double err = 0.0;
  for (int j = 1; j < grid->n_r(); ++j)
    for (int i = 0; i < grid->n_theta(); ++i)
      err = std::max(err, std::abs(-back.values(j, i) - rhs.values(j, i)));
  CHECK(err <= 1e-9);

  // refinement beats algebraic order four on a manufactured case with an
  // analytically known right-hand side
  const double a = 20.0;
  const Point2 c0(0.3, 0.2);
  auto bump = [&](const Point2& x) { return std::exp(-a * (x - c0).squaredNorm()); };
  auto exact = [&](const Point2& x) { return (1.0 - x.squaredNorm()) * bump(x); };
  auto rhs_exact = [&](const Point2& x) {
    const double g = bump(x);
    const double r2 = x.squaredNorm();
    const double d2 = (x - c0).squaredNorm();
    const double lap = -4.0 * g + 8.0 * a * x.dot(x - c0) * g +
                       (1.0 - r2) * (4.0 * a * a * d2 - 4.0 * a) * g;
    return -lap;
  };
  auto err_at = [&](int n) {
    auto g = make_grid(n, 32);
    DiskPoisson p(g);
    DiskField u2 = p.solve(sample(g, rhs_exact));
    DiskField f = sample(g, exact);
    return (u2.values - f.values).cwiseAbs().maxCoeff();
  };
  const double e16 = err_at(16), e24 = err_at(24);
  CHECK(e16 / e24 > std::pow(24.0 / 16.0, 4.0));
}

TEST_CASE("gradient at the origin") {
  auto grid = make_grid(24, 32);
  {
    DiskField f = sample(grid, [](const Point2& x) { return x(0); });
    const Point2 g = gradient_at_origin(f);
    CHECK(std::abs(g(0) - 1.0) <= 1e-10);
    CHECK(std::abs(g(1)) <= 1e-10);
  }
  {
    DiskField f = sample(grid, [](const Point2& x) {
      const double r = x.norm(), th = std::atan2(x(1), x(0));
      return 3.0 * r * std::sin(th) + r * r * std::cos(2.0 * th);
    });
    const Point2 g = gradient_at_origin(f);
    CHECK(std::abs(g(0)) <= 1e-10);
    CHECK(std::abs(g(1) - 3.0) <= 1e-10);
  }
  {
    BubbleParams p{1, 1.0, Complex(0.2, 0.0)};
    auto fn = [&](const Point2& x) { return limit_bubble(p, x) + 0.3 * x(0); };
    DiskField f = sample(grid, fn);
    const Point2 g = gradient_at_origin(f);
    const Point2 fd((fn(Point2(1e-4, 0)) - fn(Point2(-1e-4, 0))) / 2e-4,
                    (fn(Point2(0, 1e-4)) - fn(Point2(0, -1e-4))) / 2e-4);
    CHECK(std::abs(g(0) - fd(0)) <= 1e-5);
    CHECK(std::abs(g(1) - fd(1)) <= 1e-5);
  }
}

TEST_CASE("disk quadrature") {
  auto grid = make_grid(24, 32);
  DiskField one(grid);
  one.values.setOnes();
  CHECK(std::abs(integrate_disk(one) - kPi) <= 1e-12);

  DiskField odd = sample(grid, [](const Point2& x) { return x(0) * x(1); });
  CHECK(std::abs(integrate_disk(odd)) <= 1e-12);

  // concentrated bubble mass against the closed form 16 pi / (1 + lambda/32)
  const double lam = 1e-3;
  auto cgrid = make_grid(128, 32, 0.3);
  DiskField w = sample(cgrid, [&](const Point2& x) {
    return weight_exp_w(lam, Complex(0, 0), x);
  });
  const double mass = integrate_disk(w);
  const double closed = 16.0 * kPi / (1.0 + lam / 32.0);
  CHECK(std::abs(mass / closed - 1.0) <= 1e-2);
  CHECK(std::abs(mass / closed - 1.0) <= 1e-6);  // spectral quadrature does much better
}

TEST_CASE("boundary quadrature and normal derivative") {
  auto grid = make_grid(20, 32);
  DiskField one(grid);
  one.values.setOnes();
  CHECK(std::abs(integrate_boundary(one) - 2.0 * kPi) <= 1e-12);
  CHECK(std::abs(integrate_boundary(one, [](double th) { return std::cos(2.0 * th); })) <=
        1e-12);
  CHECK(std::abs(integrate_boundary(one, [](double th) {
          const double c = std::cos(th);
          return c * c;
        }) - kPi) <= 1e-12);

  {
    DiskField f = sample(grid, [](const Point2& x) { return 1.0 - x.squaredNorm(); });
    const Eigen::VectorXd d = boundary_normal_derivative(f);
    CHECK((d.array() + 2.0).abs().maxCoeff() <= 1e-10);
  }
  {
    DiskField f = sample(grid, [](const Point2& x) {
      const double r2 = x.squaredNorm();
      return 1.0 - r2 * r2;
    });
    const Eigen::VectorXd d = boundary_normal_derivative(f);
    CHECK((d.array() + 4.0).abs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("exact projection against the analytic surrogate") {
  const double lam = 1e-3;
  const Complex b(0.01, 0.0);
  auto grid = make_grid(128, 64, 0.3);
  DiskPoisson poisson(grid);
  DiskField wb = sample(grid, [&](const Point2& x) { return weight_exp_w(lam, b, x); });
  DiskField pw = poisson.solve(wb);
  double sup = 0.0;
  for (int j = 0; j < grid->n_r(); ++j)
    for (int i = 0; i < grid->n_theta(); ++i) {
      const double s = projected_bubble_surrogate(lam, b, grid->node(j, i));
      sup = std::max(sup, std::abs(pw.values(j, i) - s));
    }
  CHECK(sup <= 5.0 * lam);
}

TEST_CASE("field serialization round trip") {
  auto grid = make_grid(12, 16, 0.7);
  DiskField f = sample(grid, [](const Point2& x) { return std::sin(3.0 * x(0)) + x(1); });
  const std::string base =
      (std::filesystem::temp_directory_path() / "liouville_field_test").string();
  write_field(f, base);
  DiskField g = read_field(base);
  CHECK(g.grid->n_r() == 12);
  CHECK(g.grid->n_theta() == 16);
  CHECK(g.grid->cluster() == doctest::Approx(0.7).epsilon(1e-16));
  CHECK((g.values - f.values).cwiseAbs().maxCoeff() == 0.0);
  std::filesystem::remove(base + ".csv");
  std::filesystem::remove(base + ".meta");
}
