#pragma once

// Closed-form solution family of the planar singular Liouville problem
//   -Delta U = |x|^{2N} e^U  on R^2,
// its lambda-parameterized disk version W, the bounded kernel functions
// Z^0, Z^1, Z^2 of the linearization, and the analytic surrogates of their
// projections onto zero boundary data on the unit disk.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "liouville/green.hpp"
#include "liouville/types.hpp"

namespace liouville {

/// Parameters (N, tau, b) of the explicit solution family
///   U = log[ 8 (N+1)^2 tau / (tau + |x^{N+1} - b|^2)^2 ].
struct BubbleParams {
  int N = 1;
  double tau = 1.0;
  Complex b = {0.0, 0.0};

  void validate() const {
    if (N < 1) throw std::invalid_argument("BubbleParams: N must be >= 1");
    if (!(tau > 0.0)) throw std::invalid_argument("BubbleParams: tau must be > 0");
  }
};

template <class Scalar>
std::complex<Scalar> complex_pow_int(std::complex<Scalar> z, int n) {
  std::complex<Scalar> out(1, 0);
  for (int k = 0; k < n; ++k) out *= z;
  return out;
}

/// U_{tau,b}(x) for singularity strength N.
template <class Scalar>
Scalar limit_bubble(int N, Scalar tau, const std::complex<Scalar>& b,
                    const Eigen::Matrix<Scalar, 2, 1>& x) {
  const auto zN1 = complex_pow_int(as_complex(x), N + 1);
  const Scalar den = tau + norm_sq<Scalar>(zN1 - b);
  const Scalar np1 = Scalar(N + 1);
  return std::log(Scalar(8) * np1 * np1 * tau) - Scalar(2) * std::log(den);
}

inline double limit_bubble(const BubbleParams& p, const Point2& x) {
  return limit_bubble<double>(p.N, p.tau, p.b, x);
}

/// W_{lambda,b}(x) = log[ lambda / (lambda/32 + |x^2-b|^2)^2 ].
/// Coincides with U_{tau,b}, N = 1, under tau = lambda/32.
template <class Scalar>
Scalar w_lambda(Scalar lam, const std::complex<Scalar>& b,
                const Eigen::Matrix<Scalar, 2, 1>& x) {
  const Scalar den = lam / Scalar(32) + norm_sq<Scalar>(complex_square(x) - b);
  return std::log(lam) - Scalar(2) * std::log(den);
}

/// |x|^{2N} e^{U_{tau,b}} without overflow for small tau.
template <class Scalar>
Scalar weight_exp_bubble(int N, Scalar tau, const std::complex<Scalar>& b,
                         const Eigen::Matrix<Scalar, 2, 1>& x) {
  const auto zN1 = complex_pow_int(as_complex(x), N + 1);
  const Scalar den = tau + norm_sq<Scalar>(zN1 - b);
  const Scalar np1 = Scalar(N + 1);
  const Scalar r2 = x.squaredNorm();
  Scalar r2N = Scalar(1);
  for (int k = 0; k < N; ++k) r2N *= r2;
  return Scalar(8) * np1 * np1 * tau * r2N / (den * den);
}

/// 5-point finite-difference residual -Delta_h U - |x|^{2N} e^U of the
/// limiting problem; O(h^2) for the exact family.
inline double pde_residual_pointwise(const BubbleParams& p, const Point2& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("pde_residual_pointwise: h must be > 0");
  p.validate();
  auto U = [&](const Point2& y) { return limit_bubble(p, y); };
  const double lap = (U(x + Point2(h, 0)) + U(x - Point2(h, 0)) + U(x + Point2(0, h)) +
                      U(x - Point2(0, h)) - 4.0 * U(x)) /
                     (h * h);
  return -lap - weight_exp_bubble(p.N, p.tau, p.b, x);
}

/// |x|^2 e^{W_{lambda,b}}.
template <class Scalar>
Scalar weight_exp_w(Scalar lam, const std::complex<Scalar>& b,
                    const Eigen::Matrix<Scalar, 2, 1>& x) {
  const Scalar den = lam / Scalar(32) + norm_sq<Scalar>(complex_square(x) - b);
  return lam * x.squaredNorm() / (den * den);
}

/// Analytic surrogate of the zero-boundary projection of W:
///   PW ~ -2 log(lambda/32 + |x^2-b|^2) + 8 pi H(x^2, b),
/// accurate to O(lambda) on the closed disk. The exact projection is a
/// Poisson solve (disk_ops::DiskPoisson).
template <class Scalar>
Scalar projected_bubble_surrogate(Scalar lam, const std::complex<Scalar>& b,
                                  const Eigen::Matrix<Scalar, 2, 1>& x) {
  const std::complex<Scalar> x2 = complex_square(x);
  const Scalar den = lam / Scalar(32) + norm_sq<Scalar>(x2 - b);
  const Scalar pi = Scalar(3.14159265358979323846264338327950288L);
  return -Scalar(2) * std::log(den) +
         Scalar(8) * pi * green_regular_part_c(x2, b);
}

/// Kernel functions of the linearized operator -Delta - |x|^2 e^W:
///   Z^0 = (t - |x^2-b|^2) / (t + |x^2-b|^2),        t = lambda/32,
///   Z^1 = sqrt(t) Re(x^2-b) / (t + |x^2-b|^2),
///   Z^2 = sqrt(t) Im(x^2-b) / (t + |x^2-b|^2).
/// Ranges: Z^0 in [-1,1], |Z^{1,2}| <= 1/2.
template <class Scalar>
Scalar kernel_z(int j, Scalar lam, const std::complex<Scalar>& b,
                const Eigen::Matrix<Scalar, 2, 1>& x) {
  const Scalar t = lam / Scalar(32);
  const std::complex<Scalar> d = complex_square(x) - b;
  const Scalar den = t + norm_sq(d);
  switch (j) {
    case 0: return (t - norm_sq(d)) / den;
    case 1: return std::sqrt(t) * d.real() / den;
    case 2: return std::sqrt(t) * d.imag() / den;
    default: throw std::invalid_argument("kernel_z: j must be 0, 1 or 2");
  }
}

/// Analytic surrogate of the projected kernels: PZ^0 ~ Z^0 + 1 (gap O(lambda)),
/// PZ^j ~ Z^j for j = 1,2 (gap O(sqrt(lambda))).
template <class Scalar>
Scalar projected_kernel_surrogate(int j, Scalar lam, const std::complex<Scalar>& b,
                                  const Eigen::Matrix<Scalar, 2, 1>& x) {
  const Scalar z = kernel_z(j, lam, b, x);
  return j == 0 ? z + Scalar(1) : z;
}

}  // namespace liouville
