#include "liouville/potential.hpp"

#include <cmath>

namespace liouville {

Potential::Potential(double gamma1, double gamma2, std::vector<PolyTerm> higher)
    : gamma1_(gamma1), gamma2_(gamma2), higher_(std::move(higher)) {
  for (const PolyTerm& t : higher_)
    if (t.i < 0 || t.j < 0 || t.i + t.j < 3)
      throw std::invalid_argument("Potential: extra terms must have total degree >= 3");
  // positivity on the closed disk, by sampling
  for (int j = 0; j <= 64; ++j) {
    const double r = j / 64.0;
    for (int i = 0; i < 128; ++i) {
      const double th = 2.0 * 3.14159265358979323846 * i / 128;
      const Point2 x(r * std::cos(th), r * std::sin(th));
      if (!((*this)(x) > 0.0))
        throw std::invalid_argument("Potential: V must be positive on the closed disk");
    }
  }
}

double Potential::operator()(const Point2& x) const {
  double v = 1.0 + 0.5 * (gamma1_ * x(0) * x(0) + gamma2_ * x(1) * x(1));
  for (const PolyTerm& t : higher_)
    v += t.coeff * std::pow(x(0), t.i) * std::pow(x(1), t.j);
  return v;
}

Point2 Potential::gradient(const Point2& x) const {
  Point2 g(gamma1_ * x(0), gamma2_ * x(1));
  for (const PolyTerm& t : higher_) {
    if (t.i > 0) g(0) += t.coeff * t.i * std::pow(x(0), t.i - 1) * std::pow(x(1), t.j);
    if (t.j > 0) g(1) += t.coeff * t.j * std::pow(x(0), t.i) * std::pow(x(1), t.j - 1);
  }
  return g;
}

}  // namespace liouville
