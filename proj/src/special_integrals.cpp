#include "liouville/special_integrals.hpp"

#include <cmath>
#include <stdexcept>

#include "liouville/green.hpp"

namespace liouville {

namespace {

double default_radius(double xi_norm) { return std::max(50.0, xi_norm + 50.0); }

// int_U^inf (1+u^2)^{-2} du
double tail_quartic_primitive(double U) {
  return kPi / 4.0 - U / (2.0 * (1.0 + U * U)) - 0.5 * std::atan(U);
}

}  // namespace

double tail_radius_quartic(double shift, double tolerance) {
  const double target = tolerance / 10.0;
  double R = default_radius(shift);
  // tail = 2 pi int_R^inf rho (1+(rho-shift)^2)^{-2} drho
  auto tail = [&](double r) {
    const double U = r - shift;
    return 2.0 * kPi * (0.5 / (1.0 + U * U) + shift * tail_quartic_primitive(U));
  };
  while (tail(R) > target && R < 1e9) R *= 1.5;
  return R;
}

double tail_radius_sextic(double shift, double tolerance) {
  const double target = tolerance / 10.0;
  double R = default_radius(shift);
  auto tail = [&](double r) {
    return 2.0 * kPi * (0.5 / (r * r) + shift / (3.0 * r * r * r));
  };
  while (tail(R) > target && R < 1e9) R *= 1.5;
  return R;
}

QuadResult integrate_radial_decay(const std::function<double(const Point2&)>& integrand,
                                  const Point2& center, const QuadratureSpec& q,
                                  const std::vector<double>& feature_radii) {
  const double R = q.radius > 0.0 ? q.radius : default_radius(center.norm());
  return integrate_plane(integrand, center, R, q.tolerance, q.subdivision_limit,
                         feature_radii);
}

double integral_I(const Point2& xi, const QuadratureSpec& q) {
  if (!(q.tolerance > 0.0)) throw std::invalid_argument("integral_I: bad tolerance");
  // Polar frame at the origin turns the weight z1/|z| into cos(theta).
  auto f = [&](const Point2& z) {
    const double r = z.norm();
    if (r < 1e-300) return 0.0;
    const double d = 1.0 + (z - xi).squaredNorm();
    return z(0) / r / (d * d);
  };
  const double R = q.radius > 0.0 ? q.radius : tail_radius_quartic(xi.norm(), q.tolerance);
  QuadResult r = integrate_plane(f, Point2(0, 0), R, q.tolerance,
                                 q.subdivision_limit, {xi.norm()});
  return r.value;
}

double integral_J(double xi1, const QuadratureSpec& q) {
  // Independent route from I/4: the |x+(xi1,0)| kernel keeps its conical
  // point at x = (-xi1, 0), handled by adaptive refinement near rho = |xi1|.
  auto f = [&](const Point2& x) {
    const double d = 1.0 + x.squaredNorm();
    const double shifted = std::hypot(x(0) + xi1, x(1));
    return shifted * x(0) / (d * d * d);
  };
  const double R = q.radius > 0.0 ? q.radius : tail_radius_sextic(std::abs(xi1), q.tolerance);
  QuadResult r = integrate_plane(f, Point2(0, 0), R, q.tolerance,
                                 q.subdivision_limit, {std::abs(xi1)});
  return r.value;
}

Point2 field_F(const Point2& xi, const QuadratureSpec& q) {
  // Polar frame at -xi makes |x+xi| = rho; everything else is smooth there.
  Point2 out;
  const double R0 = q.radius > 0.0 ? q.radius : tail_radius_sextic(xi.norm(), q.tolerance);
  for (int comp = 0; comp < 2; ++comp) {
    auto f = [&](const Point2& x) {
      const double d = 1.0 + x.squaredNorm();
      return (x + xi).norm() * x(comp) / (d * d * d);
    };
    QuadResult r = integrate_plane(f, -xi, R0 + xi.norm(), q.tolerance,
                                   q.subdivision_limit, {xi.norm()});
    out(comp) = r.value;
  }
  return out;
}

Eigen::Matrix2d jacobian_F_on_axis(double xi1, const QuadratureSpec& q) {
  const Point2 xi(xi1, 0.0);
  Eigen::Matrix2d out;
  const double R0 = (q.radius > 0.0 ? q.radius : tail_radius_sextic(std::abs(xi1), q.tolerance)) +
                    std::abs(xi1);
  // dF_i/dxi_j = int (x_j + xi_j)/|x+xi| x_i (1+|x|^2)^{-3} dx; the 1/|x+xi|
  // singularity is absorbed by centering the polar frame at -xi.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      auto f = [&](const Point2& x) {
        const double d = 1.0 + x.squaredNorm();
        const double s = (x + xi).norm();
        if (s < 1e-300) return 0.0;
        return (x(j) + xi(j)) / s * x(i) / (d * d * d);
      };
      QuadResult r = integrate_plane(f, -xi, R0, q.tolerance, q.subdivision_limit,
                                     {std::abs(xi1)});
      out(i, j) = r.value;
    }
  }
  return out;
}

SquareSubstitution square_substitution_check(const std::function<double(const Complex&)>& f,
                                             const QuadratureSpec& q) {
  const double Ry = q.radius > 0.0 ? q.radius : 2000.0;
  auto lhs_f = [&](const Point2& x) { return x.squaredNorm() * f(complex_square(x)); };
  auto rhs_f = [&](const Point2& y) { return f(Complex(y(0), y(1))); };
  QuadResult lhs = integrate_plane(lhs_f, Point2(0, 0), std::sqrt(Ry), q.tolerance,
                                   q.subdivision_limit);
  QuadResult rhs = integrate_plane(rhs_f, Point2(0, 0), Ry, q.tolerance,
                                   q.subdivision_limit);
  SquareSubstitution out;
  out.lhs = lhs.value;
  out.rhs = 0.5 * rhs.value;
  const double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-12});
  out.relative_gap = std::abs(out.lhs - out.rhs) / scale;
  return out;
}

}  // namespace liouville
