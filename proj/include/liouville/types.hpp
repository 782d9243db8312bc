#pragma once

#include <Eigen/Dense>
#include <complex>

namespace liouville {

using Point2  = Eigen::Vector2d;
using Complex = std::complex<double>;

/// x = x1 + i x2 viewed as a complex number.
template <class Scalar>
std::complex<Scalar> as_complex(const Eigen::Matrix<Scalar, 2, 1>& x) {
  return {x(0), x(1)};
}

/// Complex square x^2 of the point x = x1 + i x2.
template <class Scalar>
std::complex<Scalar> complex_square(const Eigen::Matrix<Scalar, 2, 1>& x) {
  const std::complex<Scalar> z(x(0), x(1));
  return z * z;
}

template <class Scalar>
Scalar norm_sq(const std::complex<Scalar>& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

}  // namespace liouville
