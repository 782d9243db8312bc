#pragma once

// Test-only oracles, independent of the library's solution paths:
// finite-difference Laplacians with Richardson extrapolation, and a seeded
// importance-sampled Monte Carlo integrator for the plane integrals.

#include <cmath>
#include <functional>
#include <random>

#include "liouville/types.hpp"

namespace oracles {

using liouville::Point2;

/// 5-point Laplacian at x with step h.
inline double fd_laplacian(const std::function<double(const Point2&)>& f, const Point2& x,
                           double h) {
  return (f(x + Point2(h, 0)) + f(x - Point2(h, 0)) + f(x + Point2(0, h)) +
          f(x - Point2(0, h)) - 4.0 * f(x)) /
         (h * h);
}

/// Richardson-extrapolated (O(h^4)) Laplacian from steps h and h/2.
inline double fd_laplacian_richardson(const std::function<double(const Point2&)>& f,
                                      const Point2& x, double h) {
  const double c = fd_laplacian(f, x, h);
  const double fine = fd_laplacian(f, x, 0.5 * h);
  return (4.0 * fine - c) / 3.0;
}

struct MonteCarlo {
  double value = 0.0;
  double std_error = 0.0;
};

/// E-style estimate of integral f over R^2 with proposal density
/// p(z) = (1/pi) (1 + |z - center|^2)^{-2}.
inline MonteCarlo mc_integral_quartic(const std::function<double(const Point2&)>& f,
                                      const Point2& center, long samples, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double sum = 0.0, sumsq = 0.0;
  const double pi = 3.14159265358979323846;
  for (long k = 0; k < samples; ++k) {
    const double u = unif(rng);
    const double r = std::sqrt(u / (1.0 - u));
    const double th = 2.0 * pi * unif(rng);
    const Point2 z = center + r * Point2(std::cos(th), std::sin(th));
    const double w = 1.0 + (z - center).squaredNorm();
    const double val = f(z) * pi * w * w;
    sum += val;
    sumsq += val * val;
  }
  MonteCarlo out;
  out.value = sum / samples;
  const double var = sumsq / samples - out.value * out.value;
  out.std_error = std::sqrt(std::max(var, 0.0) / samples);
  return out;
}

/// Proposal p(x) = (2/pi) (1 + |x|^2)^{-3} (for the |x|(1+|x|^2)^{-3} kernels).
inline MonteCarlo mc_integral_sextic(const std::function<double(const Point2&)>& f,
                                     long samples, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double sum = 0.0, sumsq = 0.0;
  const double pi = 3.14159265358979323846;
  for (long k = 0; k < samples; ++k) {
    // radius CDF: 1 - (1+r^2)^{-2}
    const double u = unif(rng);
    const double r = std::sqrt(std::pow(1.0 - u, -0.5) - 1.0);
    const double th = 2.0 * pi * unif(rng);
    const Point2 x = r * Point2(std::cos(th), std::sin(th));
    const double w = 1.0 + x.squaredNorm();
    const double val = f(x) * (pi / 2.0) * w * w * w;
    sum += val;
    sumsq += val * val;
  }
  MonteCarlo out;
  out.value = sum / samples;
  const double var = sumsq / samples - out.value * out.value;
  out.std_error = std::sqrt(std::max(var, 0.0) / samples);
  return out;
}

}  // namespace oracles
