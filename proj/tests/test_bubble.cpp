#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "liouville/bubble.hpp"
#include "liouville/green.hpp"
#include "oracles.hpp"

using namespace liouville;

TEST_CASE("limit bubble closed form") {
  BubbleParams p;  // N=1, tau=1, b=0
  CHECK(limit_bubble(p, Point2(0, 0)) == doctest::Approx(std::log(32.0)).epsilon(1e-14));

  // depends on x only through x^2
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const Point2 x(u(rng), u(rng));
    CHECK(limit_bubble(p, x) == doctest::Approx(limit_bubble(p, -x)).epsilon(1e-15));
  }

  BubbleParams p2{1, 2.0, Complex(1.0, 0.0)};
  CHECK(limit_bubble(p2, Point2(1, 0)) ==
        doctest::Approx(std::log(16.0)).epsilon(1e-14));
}

TEST_CASE("pointwise PDE residual vanishes at second order") {
  BubbleParams p{1, 1.0, Complex(0.2, -0.1)};
  auto U = [&](const Point2& x) { return limit_bubble(p, x); };

  const Point2 x0(0.5, 0.3);
  const double r1 = pde_residual_pointwise(p, x0, 1e-3);
  CHECK(std::abs(r1) <= 1e-4);

  // Richardson-extrapolated oracle confirms the finite-difference origin of
  // the residual: the extrapolated value is far smaller
  const double rich =
      -oracles::fd_laplacian_richardson(U, x0, 1e-3) - weight_exp_bubble(1, 1.0, p.b, x0);
  CHECK(std::abs(rich) < 0.05 * std::abs(r1) + 1e-9);

  // second-order convergence in h
  const double r2 = pde_residual_pointwise(p, x0, 5e-4);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));

  // at the origin the weight vanishes and Delta U(0) = 0 analytically (the
  // phase of x^2 is harmonic, the modulus quartic), so the residual is pure
  // truncation and still falls at order two
  const double q1 = pde_residual_pointwise(p, Point2(0, 0), 1e-3);
  const double q2 = pde_residual_pointwise(p, Point2(0, 0), 5e-4);
  CHECK(q1 / q2 == doctest::Approx(4.0).epsilon(0.05));

  BubbleParams pr{1, 1.0, Complex(0, 0)};
  const double o1 = pde_residual_pointwise(pr, Point2(0, 0), 1e-3);
  CHECK(std::abs(o1) <= 1e-5);  // -Delta U(0) = 0 = weight
}

TEST_CASE("W is the tau = lambda/32 member of the family") {
  CHECK(w_lambda(32.0, Complex(0, 0), Point2(0, 0)) ==
        doctest::Approx(std::log(32.0)).epsilon(1e-14));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ul(-4.0, -0.3);
  std::uniform_real_distribution<double> ux(-1.5, 1.5);
  for (int k = 0; k < 50; ++k) {
    const double lam = std::pow(10.0, ul(rng));
    const Complex b(0.2 * ux(rng), 0.2 * ux(rng));
    const Point2 x(ux(rng), ux(rng));
    const double w = w_lambda(lam, b, x);
    const double u = limit_bubble<double>(1, lam / 32.0, b, x);
    CHECK(w == doctest::Approx(u).epsilon(1e-13));
  }

  // boundary expansion W = log lambda - lambda/16 + O(lambda^2) at |x| = 1
  const double lam = 1e-3;
  const double w = w_lambda(lam, Complex(0, 0), Point2(1, 0));
  CHECK(std::abs(w - (std::log(lam) - lam / 16.0)) <= 1e-7);
}

TEST_CASE("Green's function of the disk") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-0.95, 0.95);

  // vanishes for boundary source
  for (int k = 0; k < 10; ++k) {
    const double th = 0.7 * k;
    Point2 y(std::cos(th), std::sin(th));
    Point2 x(0.3 * u(rng), 0.3 * u(rng));
    CHECK(std::abs(green_function(x, y)) <= 1e-13);
  }

  CHECK(green_function(Point2(0, 0), Point2(0.5, 0)) ==
        doctest::Approx(std::log(2.0) / (2.0 * kPi)).epsilon(1e-14));

  for (int k = 0; k < 50; ++k) {
    Point2 x(u(rng), u(rng)), y(u(rng), u(rng));
    while (x.norm() >= 1) x *= 0.5;
    while (y.norm() >= 1) y *= 0.5;
    if ((x - y).norm() < 1e-6) continue;
    CHECK(green_function(x, y) == doctest::Approx(green_function(y, x)).epsilon(1e-12));
    // regular part completes the logarithmic kernel
    const double h = green_regular_part(x, y);
    CHECK(std::abs(h + std::log(1.0 / (x - y).norm()) / (2 * kPi) - green_function(x, y)) <=
          1e-13);
  }

  CHECK(std::abs(green_regular_part(Point2(0, 0), Point2(0.3, 0.4))) <= 1e-15);
  CHECK_THROWS_AS((void)green_function(Point2(0.1, 0.1), Point2(0.1, 0.1)),
                  std::domain_error);
}

TEST_CASE("regular part is harmonic in y") {
  const Point2 x(0.4, -0.3);
  for (const Point2 y : {Point2(0.2, 0.1), Point2(-0.5, 0.3), Point2(0.0, -0.6)}) {
    auto f = [&](const Point2& yy) { return green_regular_part(x, yy); };
    CHECK(std::abs(oracles::fd_laplacian(f, y, 1e-3)) <= 1e-6);
  }
}

TEST_CASE("projected bubble surrogate") {
  // with b = 0 the regular-part term vanishes and the surrogate is W - log(lambda)
  const double lam = 1e-2;
  for (const Point2 x : {Point2(0.3, 0.2), Point2(0.0, 0.0), Point2(-0.8, 0.1)}) {
    const double s = projected_bubble_surrogate(lam, Complex(0, 0), x);
    CHECK(s == doctest::Approx(w_lambda(lam, Complex(0, 0), x) - std::log(lam))
                   .epsilon(1e-12));
  }

  // boundary values decay like lambda (slope 1 in log-log)
  const Complex b(0.02, 0.01);
  std::vector<double> lams = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> sup(lams.size(), 0.0);
  for (size_t li = 0; li < lams.size(); ++li) {
    for (int k = 0; k < 256; ++k) {
      const double th = 2.0 * kPi * k / 256;
      const Point2 x(std::cos(th), std::sin(th));
      sup[li] = std::max(sup[li],
                         std::abs(projected_bubble_surrogate(lams[li], b, x)));
    }
  }
  for (size_t li = 0; li + 1 < lams.size(); ++li) {
    const double slope = std::log10(sup[li] / sup[li + 1]);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.1));
  }
}

TEST_CASE("kernel functions of the linearization") {
  const double lam = 0.5;
  const Complex b(0.05, 0.02);
  // x with x^2 = b
  const Complex sb = std::sqrt(b);
  const Point2 xb(sb.real(), sb.imag());
  CHECK(kernel_z(0, lam, b, xb) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(kernel_z(1, lam, b, xb)) <= 1e-12);
  CHECK(std::abs(kernel_z(2, lam, b, xb)) <= 1e-12);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int k = 0; k < 200; ++k) {
    const Point2 x(u(rng), u(rng));
    CHECK(std::abs(kernel_z(0, lam, b, x)) <= 1.0);
    CHECK(std::abs(kernel_z(1, lam, b, x)) <= 0.5);
    CHECK(std::abs(kernel_z(2, lam, b, x)) <= 0.5);
  }

  // -Delta Z^j = |x|^2 e^W Z^j, checked by finite differences
  for (int j = 0; j <= 2; ++j) {
    int checked = 0;
    for (int k = 0; checked < 20 && k < 200; ++k) {
      const Point2 x(u(rng), u(rng));
      if (x.norm() < 0.05 || x.norm() > 0.85) continue;
      auto Z = [&](const Point2& p) { return kernel_z(j, lam, b, p); };
      const double lhs = -oracles::fd_laplacian_richardson(Z, x, 2e-4);
      const double rhs = weight_exp_w(lam, b, x) * kernel_z(j, lam, b, x);
      const double scale = std::abs(rhs) + std::abs(lhs) + 1.0;
      CHECK(std::abs(lhs - rhs) / scale <= 1e-3);
      ++checked;
    }
    CHECK(checked == 20);
  }
}

TEST_CASE("projected kernel surrogates have the stated boundary sizes") {
  const Complex b(0.0, 0.0);
  for (double lam : {1e-2, 1e-3, 1e-4}) {
    double sup0 = 0.0, sup1 = 0.0;
    for (int k = 0; k < 128; ++k) {
      const double th = 2.0 * kPi * k / 128;
      const Point2 x(std::cos(th), std::sin(th));
      sup0 = std::max(sup0, std::abs(projected_kernel_surrogate(0, lam, b, x)));
      sup1 = std::max(sup1, std::abs(projected_kernel_surrogate(1, lam, b, x)));
    }
    // Z^0 + 1 = 2 (lambda/32) / (lambda/32 + 1) = O(lambda) on the circle
    CHECK(sup0 <= 0.1 * lam / (lam / 32.0 + 1.0) * 32.0);
    CHECK(sup0 >= 0.01 * lam);
    // Z^1 = O(sqrt(lambda)) on the circle
    CHECK(sup1 <= std::sqrt(lam / 32.0));
  }
}
