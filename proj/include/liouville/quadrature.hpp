#pragma once

// Adaptive quadrature over R^2 in polar coordinates about a chosen center.
// Radial direction: worst-first panel subdivision with embedded Gauss-Legendre
// error estimates; angular direction: trapezoid with doubling (spectral for
// the smooth periodic sections that arise here). Centering the polar frame at
// an integrable |z - c|^{-alpha}, alpha < 1, singularity absorbs it into the
// area element.

#include <functional>
#include <vector>

#include "liouville/types.hpp"

namespace liouville {

/// Truncation and tolerance controls for the improper plane integrals.
struct QuadratureSpec {
  double radius = 0.0;          ///< truncation radius; 0 selects max(50, |xi|+50) extended by the tail rule
  double tolerance = 1e-8;      ///< target absolute error on the truncated integral
  int subdivision_limit = 4000; ///< radial panel budget
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  long evaluations = 0;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Integral of f over the disk |z - center| <= radius. `feature_radii` are
/// distances from the center where the integrand has sharp structure; panel
/// boundaries are planted there.
QuadResult integrate_plane(const std::function<double(const Point2&)>& f,
                           const Point2& center, double radius, double tolerance,
                           int subdivision_limit,
                           const std::vector<double>& feature_radii = {});

}  // namespace liouville
