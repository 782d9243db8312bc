#pragma once

// Quantitative scaling checks: weighted-norm laws of the bubble, decay of the
// approximation defect R_lambda, log-log slope fits, profile fitting of a
// computed solution to the bubble family, and the bounded quantity whose
// blow-up separates simple from non-simple concentration.

#include <functional>
#include <vector>

#include "liouville/disk_ops.hpp"
#include "liouville/potential.hpp"
#include "liouville/types.hpp"

namespace liouville {

struct ScalingFit {
  std::vector<double> lambdas;
  std::vector<double> values;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double theoretical_slope = 0.0;
  double max_deviation = 0.0;  ///< max |log10 value - fit| over the samples
  bool ok = false;             ///< >= 5 samples over >= 2 decades with R^2 >= 0.99
};

/// Least-squares line through (log10 lambda, log10 value). Throws on fewer
/// than 4 samples or a span under two decades.
ScalingFit fit_loglog(const std::vector<double>& lambdas, const std::vector<double>& values,
                      double theoretical_slope);

/// Grid sized for concentration scale lambda^{1/4}: radial count grows like
/// lambda^{-1/8} (capped), cluster coefficient shrinks like lambda^{1/4}.
std::shared_ptr<const DiskGrid> auto_scaling_grid(double lam, int n_theta = 64);

/// || |x|^{2+s} e^{W_lambda} ||_p over the disk; theoretical slope
/// s/4 - (p-1)/(2p).
ScalingFit weight_norm_scaling(int s, double p, const std::vector<double>& lambdas,
                               const std::function<Complex(double)>& b_rule);

/// R_lambda = |x|^2 e^W - lambda V |x|^2 e^{PW} with the exact projection PW.
DiskField residual_R_lambda(const DiskPoisson& poisson, double lam, const Potential& V,
                            const Complex& b);

/// ||R_lambda||_p slope against the stated 3/4 - (p-1)/(2p) law.
ScalingFit error_norm_scaling(double p, const Potential& V, const std::vector<double>& lambdas,
                              const std::function<Complex(double)>& b_rule);

/// L^p norm of a pointwise function over the disk on a given grid.
double lp_norm_disk(const std::shared_ptr<const DiskGrid>& grid,
                    const std::function<double(const Point2&)>& f, double p);

struct BubbleFit {
  double tau = 0.0;
  Complex b{0.0, 0.0};
  Point2 beta{0.0, 0.0};  ///< located interior maximum
  double sup_err = 0.0;   ///< sup over the grid of |v - fitted profile|
};

/// Fits v ~ log[32 tau / (1 + tau |x^2-b|^2)^2] - log(lambda V(beta)) with
/// tau = lambda V(beta) e^{v(beta)} / 32 and b = beta^2. Throws
/// std::domain_error when the maximum sits on the boundary ring.
BubbleFit bubble_fit(const DiskField& v, double lam, const Potential& V);

/// sup over the grid of v + 4 log|x| + log lambda (N = 1 profile bound).
double simple_blowup_indicator(const DiskField& v, double lam);

}  // namespace liouville
