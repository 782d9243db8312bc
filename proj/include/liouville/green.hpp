#pragma once

// Dirichlet Green's function of -Delta on the unit disk and its regular part.
//
//   G(x,y) = (1/2pi) log(1/|x-y|) + (1/4pi) log(1 + |x|^2|y|^2 - 2<x,y>)
//   H(x,y) = (1/4pi) log(|x|^2|y|^2 - 2<x,y> + 1)
//
// H is the image-point form (1/2pi) log(|x| |y - x/|x|^2|); the quadratic
// form under the log is (1-|x|^2)(1-|y|^2) + |x-y|^2 >= 0, vanishing only
// for x = y on the boundary circle.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "liouville/types.hpp"

namespace liouville {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Distance below which G(x,y) is treated as a coincident-point error.
inline constexpr double kGreenCoincidentEps = 1e-12;

template <class Scalar>
Scalar green_regular_part_c(const std::complex<Scalar>& x,
                            const std::complex<Scalar>& y) {
  const Scalar q = norm_sq(x) * norm_sq(y) -
                   Scalar(2) * (x.real() * y.real() + x.imag() * y.imag()) +
                   Scalar(1);
  const Scalar pi = Scalar(3.14159265358979323846264338327950288L);
  if (q <= Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
  return std::log(q) / (Scalar(4) * pi);
}

inline double green_regular_part(const Point2& x, const Point2& y) {
  return green_regular_part_c(as_complex(x), as_complex(y));
}

inline double green_function(const Point2& x, const Point2& y) {
  const double d = (x - y).norm();
  if (d < kGreenCoincidentEps)
    throw std::domain_error("green_function: coincident points");
  return std::log(1.0 / d) / (2.0 * kPi) + green_regular_part(x, y);
}

}  // namespace liouville
