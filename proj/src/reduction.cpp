#include "liouville/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "liouville/green.hpp"
#include "liouville/special_integrals.hpp"

namespace liouville {

Classification classify(const Potential& V, const QuadratureSpec& q) {
  const double g1 = V.gamma1(), g2 = V.gamma2();
  if (g1 == 0.0 || g2 == 0.0)
    throw std::domain_error("classify: degenerate Hessian (gamma1 or gamma2 vanishes)");
  Classification out;
  out.exists = g1 * g2 > 0.0;
  if (g1 + g2 != 0.0) out.ratio = (g1 - g2) / (g1 + g2);
  if (g1 == g2)
    out.b1_sign = 0;
  else
    out.b1_sign = std::abs(g1) < std::abs(g2) ? 1 : -1;
  if (out.exists) out.b_tilde_star = solve_reduced_equation(g1, g2, q);
  return out;
}

double solve_reduced_equation(double gamma1, double gamma2, const QuadratureSpec& q) {
  if (!(gamma1 * gamma2 > 0.0))
    throw std::domain_error("solve_reduced_equation: requires gamma1*gamma2 > 0");
  const double target = -(kPi / 4.0) * (gamma1 - gamma2) / (gamma1 + gamma2);
  if (gamma1 == gamma2) return 0.0;

  QuadratureSpec qj = q;
  qj.tolerance = std::min(q.tolerance, 1e-11);
  auto J = [&](double s) { return integral_J(s, qj); };

  // bracket, then bisection with secant acceleration
  double lo = -1.0, hi = 1.0;
  while (J(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw std::runtime_error("solve_reduced_equation: failed to bracket");
  }
  while (J(lo) > target) {
    hi = lo;
    lo *= 2.0;
    if (lo < -1e6) throw std::runtime_error("solve_reduced_equation: failed to bracket");
  }
  double flo = J(lo) - target, fhi = J(hi) - target;
  double root = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double cand = hi - fhi * (hi - lo) / (fhi - flo);  // secant
    if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    const double fc = J(cand) - target;
    root = cand;
    if (std::abs(fc) < 1e-10 || hi - lo < 1e-12) break;
    if (fc > 0.0) {
      hi = cand;
      fhi = fc;
    } else {
      lo = cand;
      flo = fc;
    }
  }
  return root;
}

Complex predict_b(double lam, double gamma1, double gamma2, const QuadratureSpec& q) {
  const double root = solve_reduced_equation(gamma1, gamma2, q);
  return Complex(std::sqrt(lam / 32.0) * root, 0.0);
}

}  // namespace liouville
