#pragma once

// Finite-dimensional part of the construction: Hessian classification of the
// potential, the scalar reduced equation
//    J(b1*) = -(pi/4) (gamma1 - gamma2)/(gamma1 + gamma2),
// and the leading-order location b = sqrt(lambda/32) (b1*, 0) of the bubble.

#include <optional>

#include "liouville/potential.hpp"
#include "liouville/quadrature.hpp"
#include "liouville/types.hpp"

namespace liouville {

struct Classification {
  bool exists = false;          ///< a blow-up family exists iff gamma1*gamma2 > 0
  double ratio = 0.0;           ///< (gamma1-gamma2)/(gamma1+gamma2), when defined
  std::optional<double> b_tilde_star;  ///< root of the reduced equation
  int b1_sign = 0;              ///< -1, 0, +1 per the |gamma| comparison
};

/// Throws std::domain_error when either Hessian eigenvalue vanishes
/// (degenerate critical point).
Classification classify(const Potential& V, const QuadratureSpec& q = {});

/// Unique root of the reduced equation, by strict monotonicity of J.
/// Requires gamma1*gamma2 > 0. Residual |J(root) + (pi/4) ratio| <= 1e-10.
double solve_reduced_equation(double gamma1, double gamma2, const QuadratureSpec& q = {});

/// Leading-order bubble location sqrt(lambda/32) (b1*, 0) in the Hessian
/// eigenframe.
Complex predict_b(double lam, double gamma1, double gamma2, const QuadratureSpec& q = {});

}  // namespace liouville
