#pragma once

// Newton solution of
//   -Delta v = lambda |x|^2 V(x) e^v in B_1,  v = 0 on the boundary,
// continuation of the blow-up branch in lambda, and the bordered inner/outer
// splitting that mirrors the construction of that branch: an inner problem
// for the correction phi orthogonal to the projected kernel directions, with
// multipliers (c1, c2), and an outer 2-D root find on the bubble location b
// annihilating the multipliers.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "liouville/disk_ops.hpp"
#include "liouville/potential.hpp"
#include "liouville/types.hpp"

namespace liouville {

struct SolverConfig {
  double newton_tol = 1e-10;  ///< on the max-norm residual scaled by the source magnitude
  int max_iterations = 25;
  int max_halvings = 10;      ///< backtracking damping
  double lambda_start = 1e-1;
  double lambda_end = 1e-4;
  double lambda_ratio = 0.7;  ///< geometric continuation schedule
  int n_r = 128;
  int n_theta = 256;
  double cluster = 0.0;       ///< radial cluster coefficient; 0 = auto from lambda_end
  double m_box = 20.0;        ///< admissible |b| <= m_box sqrt(lambda)
  double inner_update_tol = 1e-11;  ///< H1 norm of the phi update
  int inner_max_iterations = 60;
  double outer_c_tol = 1e-8;  ///< stop when |c| <= outer_c_tol sqrt(lambda)
  int outer_max_iterations = 40;
  double gmres_tol = 1e-12;
  int gmres_restart = 80;
  int gmres_max_restarts = 4;
  double near_singular_threshold = 1e-8;
};

struct SolveResult {
  double lambda = 0.0;
  DiskField field;
  int newton_iterations = 0;
  double final_residual_norm = 0.0;  ///< scaled max norm, see SolverConfig::newton_tol
  bool converged = false;
  bool near_singular_warning = false;
  double min_eigenvalue_estimate = 0.0;
  std::vector<double> residual_history;
  // filled along the continuation branch
  double tau_fit = 0.0;
  Complex b_fit{0.0, 0.0};
  double fit_sup_err = 0.0;
  Complex b_used{0.0, 0.0};  ///< bubble location from the outer reduction
  double c1 = 0.0, c2 = 0.0; ///< multipliers at b_used
};

struct BorderedResult {
  DiskField phi;
  DiskField projected_bubble;  ///< exact Dirichlet projection of W at this (lambda, b)
  double c1 = 0.0, c2 = 0.0;
  int iterations = 0;
  double update_norm = 0.0;    ///< H1 norm of the last phi update
};

SolveResult newton_solve(double lam, const Potential& V, const DiskField& initial,
                         const SolverConfig& cfg);

/// Inner problem at fixed b: the nonlinear correction phi with multipliers,
/// solved by iterating the frozen-coefficient bordered linear problem.
/// Requires |b| <= m_box sqrt(lambda).
BorderedResult bordered_solve(double lam, const Potential& V, const Complex& b,
                              const std::shared_ptr<const DiskGrid>& grid,
                              const SolverConfig& cfg);

/// Root find on b -> (c1(b), c2(b)). Throws std::domain_error when the
/// classification excludes a blow-up family, std::runtime_error (with a
/// sampled c-field in the message) when the root find fails.
std::pair<Complex, BorderedResult> outer_reduction(
    double lam, const Potential& V, const std::shared_ptr<const DiskGrid>& grid,
    const SolverConfig& cfg, std::optional<Complex> initial_b = std::nullopt);

/// Blow-up branch over the geometric lambda schedule; bordered stage then a
/// full Newton polish at every point. Step failure refines the ratio
/// (ratio -> sqrt(ratio)) up to three times, then returns partial results.
std::vector<SolveResult> continuation_run(const Potential& V, const SolverConfig& cfg);

/// Auto cluster coefficient resolving bubble width ~ lambda^{1/4}.
double auto_cluster(double lambda_min);

/// True when the concentration scale lambda^{1/4} is under-resolved by the
/// innermost radial spacing of the grid (the CLI warns on it).
bool grid_underresolves(const DiskGrid& grid, double lambda_min);

}  // namespace liouville
