#pragma once

// Coefficient function V of the boundary value problem, normalized to
// V(0) = 1 and grad V(0) = 0, with Hessian eigenvalues (gamma1, gamma2) in
// the working frame:
//   V(x) = 1 + (gamma1 x1^2 + gamma2 x2^2)/2 + sum c_{ij} x1^i x2^j,
// the sum running over optional terms of total degree >= 3.

#include <stdexcept>
#include <vector>

#include "liouville/types.hpp"

namespace liouville {

struct PolyTerm {
  int i = 0, j = 0;
  double coeff = 0.0;
};

class Potential {
 public:
  Potential(double gamma1, double gamma2, std::vector<PolyTerm> higher = {});

  double gamma1() const { return gamma1_; }
  double gamma2() const { return gamma2_; }
  const std::vector<PolyTerm>& higher() const { return higher_; }

  double operator()(const Point2& x) const;
  Point2 gradient(const Point2& x) const;

 private:
  double gamma1_, gamma2_;
  std::vector<PolyTerm> higher_;
};

}  // namespace liouville
