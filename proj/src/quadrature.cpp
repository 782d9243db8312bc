#include "liouville/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "liouville/green.hpp"

namespace liouville {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

namespace {

struct GLRule {
  std::vector<double> x, w;
};

const GLRule& gl_rule(int n) {
  static std::map<int, GLRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    GLRule r;
    gauss_legendre(n, r.x, r.w);
    it = cache.emplace(n, std::move(r)).first;
  }
  return it->second;
}

struct ThetaAverage {
  double value = 0.0;  // integral of f(center + rho e^{i theta}) over theta
  double error = 0.0;
  long evals = 0;
};

// Trapezoid over the full period with doubling until the update stalls
// relative to the local magnitude. Returns the theta-integral (not mean).
ThetaAverage theta_integral(const std::function<double(const Point2&)>& f,
                            const Point2& center, double rho) {
  constexpr int kStart = 16;
  constexpr int kMax = 1 << 15;
  ThetaAverage out;
  double sum = 0.0;
  int m = kStart;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * kPi * k / m;
    sum += f(center + rho * Point2(std::cos(th), std::sin(th)));
  }
  out.evals += m;
  double prev = sum * (2.0 * kPi / m);
  while (m < kMax) {
    // refine by inserting midpoints
    double add = 0.0;
    for (int k = 0; k < m; ++k) {
      const double th = 2.0 * kPi * (k + 0.5) / m;
      add += f(center + rho * Point2(std::cos(th), std::sin(th)));
    }
    out.evals += m;
    sum += add;
    m *= 2;
    const double cur = sum * (2.0 * kPi / m);
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (diff <= 1e-13 * std::max(std::abs(cur), 1e-300)) {
      out.value = cur;
      out.error = diff;
      return out;
    }
    out.error = diff;
  }
  out.value = prev;
  return out;
}

struct Panel {
  double a, b;
  double value;   // GL-24 estimate of the panel integral
  double error;   // |GL-24 - GL-12| + accumulated theta error
};

Panel make_panel(const std::function<double(const Point2&)>& f, const Point2& center,
                 double a, double b, long& evals) {
  const GLRule& lo = gl_rule(12);
  const GLRule& hi = gl_rule(24);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double vlo = 0.0, vhi = 0.0, terr = 0.0;
  for (int i = 0; i < 12; ++i) {
    const double rho = mid + half * lo.x[i];
    const ThetaAverage ta = theta_integral(f, center, rho);
    evals += ta.evals;
    vlo += lo.w[i] * rho * ta.value;
  }
  for (int i = 0; i < 24; ++i) {
    const double rho = mid + half * hi.x[i];
    const ThetaAverage ta = theta_integral(f, center, rho);
    evals += ta.evals;
    vhi += hi.w[i] * rho * ta.value;
    terr += hi.w[i] * rho * ta.error;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = half * vhi;
  p.error = half * (std::abs(vhi - vlo) + terr);
  return p;
}

}  // namespace

QuadResult integrate_plane(const std::function<double(const Point2&)>& f,
                           const Point2& center, double radius, double tolerance,
                           int subdivision_limit,
                           const std::vector<double>& feature_radii) {
  if (!(radius > 0.0)) throw std::invalid_argument("integrate_plane: radius must be > 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("integrate_plane: tolerance must be > 0");

  // Initial breakpoints: unit-scale panel at the center, geometric growth
  // outward, plus the caller's feature radii.
  std::vector<double> brk{0.0};
  for (double r = std::min(1.0, radius); r < radius; r *= 2.0) brk.push_back(r);
  brk.push_back(radius);
  for (double fr : feature_radii) {
    if (fr > 1e-12 && fr < radius) {
      brk.push_back(0.9 * fr);
      brk.push_back(fr);
      brk.push_back(std::min(1.1 * fr, radius));
    }
  }
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end(),
                        [](double u, double v) { return std::abs(u - v) < 1e-14 * (1.0 + v); }),
            brk.end());

  QuadResult out;
  // Worst-first queue keyed by panel error; insertion counter breaks ties
  // deterministically.
  std::multimap<double, std::pair<long, Panel>, std::greater<double>> queue;
  long counter = 0;
  for (size_t i = 0; i + 1 < brk.size(); ++i) {
    Panel p = make_panel(f, center, brk[i], brk[i + 1], out.evaluations);
    queue.emplace(p.error, std::make_pair(counter++, p));
  }

  int n_panels = static_cast<int>(queue.size());
  while (n_panels < subdivision_limit) {
    double total_err = 0.0;
    for (const auto& kv : queue) total_err += kv.first;
    if (total_err <= 0.5 * tolerance) break;
    auto worst = queue.begin();
    const Panel p = worst->second.second;
    if (p.b - p.a < 1e-14 * (1.0 + p.b)) break;  // cannot refine further
    queue.erase(worst);
    const double mid = 0.5 * (p.a + p.b);
    Panel left = make_panel(f, center, p.a, mid, out.evaluations);
    Panel right = make_panel(f, center, mid, p.b, out.evaluations);
    queue.emplace(left.error, std::make_pair(counter++, left));
    queue.emplace(right.error, std::make_pair(counter++, right));
    ++n_panels;
  }

  double total = 0.0, err = 0.0;
  // Fixed reduction order: ascending left endpoint.
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  for (const auto& kv : queue) panels.push_back(kv.second.second);
  std::sort(panels.begin(), panels.end(),
            [](const Panel& u, const Panel& v) { return u.a < v.a; });
  for (const Panel& p : panels) {
    total += p.value;
    err += p.error;
  }
  out.value = total;
  out.error_estimate = err;
  out.converged = err <= tolerance;
  return out;
}

}  // namespace liouville
