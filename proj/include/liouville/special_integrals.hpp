#pragma once

// The plane integrals steering the finite-dimensional reduction:
//
//   I(xi)  = int_{R^2} z1/|z| (1 + |z-xi|^2)^{-2} dz
//   J(s)   = int_{R^2} |x+(s,0)| x1 (1 + |x|^2)^{-3} dx
//   F(xi)  = ( int |x+xi| x1 (1+|x|^2)^{-3} dx , int |x+xi| x2 (1+|x|^2)^{-3} dx )
//
// F uses the |x+xi| kernel so that F((s,0)) = (J(s), 0) and DF has positive
// diagonal on the axis (the opposite |x-xi| convention flips both signs and
// would flip the classification of the reduced-equation root; both
// conventions coincide up to xi -> -xi).
//
// Facts relied on elsewhere: I is odd in xi1, even in xi2; sign I = sign xi1;
// I((s,0)) -> pi as s -> +inf; J = I/4; J odd and strictly increasing with
// J -> pi/4.

#include <functional>
#include <utility>

#include "liouville/quadrature.hpp"
#include "liouville/types.hpp"

namespace liouville {

double integral_I(const Point2& xi, const QuadratureSpec& q = {});

double integral_J(double xi1, const QuadratureSpec& q = {});

Point2 field_F(const Point2& xi, const QuadratureSpec& q = {});

/// d F / d xi at (xi1, 0). Off-diagonal entries vanish by x2-reflection;
/// both diagonal entries are positive, so det > 0.
Eigen::Matrix2d jacobian_F_on_axis(double xi1, const QuadratureSpec& q = {});

struct SquareSubstitution {
  double lhs = 0.0;  ///< int |x|^2 f(x^2) dx over |x| <= sqrt(R)
  double rhs = 0.0;  ///< (1/2) int f(y) dy over |y| <= R
  double relative_gap = 0.0;
};

/// Checks int |x|^2 f(x^2) dx = (1/2) int f(y) dy with both sides truncated
/// to the image-matched disks, so the gap is pure quadrature error.
SquareSubstitution square_substitution_check(const std::function<double(const Complex&)>& f,
                                             const QuadratureSpec& q = {});

/// Plane integral of `integrand` truncated at q.radius (or the default rule)
/// in polar coordinates about `center`.
QuadResult integrate_radial_decay(const std::function<double(const Point2&)>& integrand,
                                  const Point2& center, const QuadratureSpec& q = {},
                                  const std::vector<double>& feature_radii = {});

/// Truncation radius giving analytic tail bound <= tolerance/10 for kernels
/// bounded by rho (rho + shift) (1 + (rho - shift)^2)^{-2} at distance rho.
double tail_radius_quartic(double shift, double tolerance);

/// Same for kernels bounded by rho^2 (rho + shift) (1 + rho^2)^{-3}.
double tail_radius_sextic(double shift, double tolerance);

}  // namespace liouville
