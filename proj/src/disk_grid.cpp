#include "liouville/disk_grid.hpp"

#include <cmath>
#include <stdexcept>

#include "liouville/fft.hpp"
#include "liouville/green.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  if (n < 2) return;
  if ((n & (n - 1)) == 0) {
    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
      size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
      const double ang = 2.0 * kPi / double(len) * (inverse ? 1.0 : -1.0);
      const std::complex<double> wl(std::cos(ang), std::sin(ang));
      for (size_t i = 0; i < n; i += len) {
        std::complex<double> w(1.0, 0.0);
        for (size_t k = 0; k < len / 2; ++k) {
          const auto u = a[i + k];
          const auto v = a[i + k + len / 2] * w;
          a[i + k] = u + v;
          a[i + k + len / 2] = u - v;
          w *= wl;
        }
      }
    }
  } else {
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    for (size_t m = 0; m < n; ++m) {
      for (size_t k = 0; k < n; ++k) {
        const double ang = 2.0 * kPi * double(m * k % n) / double(n) * (inverse ? 1.0 : -1.0);
        out[m] += a[k] * std::complex<double>(std::cos(ang), std::sin(ang));
      }
    }
    a = std::move(out);
  }
  if (inverse)
    for (auto& z : a) z /= double(n);
}

namespace {

// Chebyshev-Gauss-Lobatto differentiation matrix on cos(k pi / N), k = 0..N.
// Node differences use the product-of-sines identity and the diagonal the
// negative-sum trick, both for roundoff.
Eigen::MatrixXd chebyshev_diff(int N) {
  const int n = N + 1;
  Eigen::MatrixXd d(n, n);
  auto c = [&](int k) { return (k == 0 || k == N) ? 2.0 : 1.0; };
  const double h = kPi / (2.0 * N);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      // x_i - x_j = -2 sin((i+j) h) sin((i-j) h)
      const double diff = -2.0 * std::sin((i + j) * h) * std::sin((i - j) * h);
      d(i, j) = (c(i) / c(j)) * sgn / diff;
      rowsum += d(i, j);
    }
    d(i, i) = -rowsum;
  }
  return d;
}

}  // namespace

DiskGrid::DiskGrid(int n_r, int n_theta, double cluster)
    : n_r_(n_r), n_theta_(n_theta), cluster_(cluster) {
  if (n_r < 8) throw std::invalid_argument("DiskGrid: n_r must be >= 8");
  if (n_theta < 8 || n_theta % 2 != 0)
    throw std::invalid_argument("DiskGrid: n_theta must be even and >= 8");
  if (!(cluster > 0.0 && cluster <= 1.0))
    throw std::invalid_argument("DiskGrid: cluster must lie in (0, 1]");

  const int M = n_r;
  const int N = 2 * M - 1;  // odd: doubled grid has no node at s = 0

  s_full_.resize(N + 1);
  for (int k = 0; k <= N; ++k) s_full_(k) = std::cos(kPi * k / N);

  r_.resize(M);
  psi_p_.resize(M);
  for (int j = 0; j < M; ++j) {
    r_(j) = map_r(s_full_(j));
    psi_p_(j) = map_dr(s_full_(j));
  }

  // Folded + mapped radial derivative operators per parity.
  const Eigen::MatrixXd D = chebyshev_diff(N);
  Eigen::MatrixXd D2 = D * D;
  for (int i = 0; i <= N; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j <= N; ++j)
      if (j != i) rowsum += D2(i, j);
    D2(i, i) = -rowsum;
  }
  for (int parity = 0; parity < 2; ++parity) {
    const double sigma = parity == 0 ? 1.0 : -1.0;
    Eigen::MatrixXd e1(M, M), e2(M, M);
    for (int i = 0; i < M; ++i) {
      for (int j = 0; j < M; ++j) {
        e1(i, j) = D(i, j) + sigma * D(i, N - j);
        e2(i, j) = D2(i, j) + sigma * D2(i, N - j);
      }
    }
    // d/dr = (1/psi') d/ds ; d2/dr2 = (1/psi'^2) d2/ds2 - (psi''/psi'^3) d/ds
    Eigen::VectorXd inv_p(M), curv(M);
    for (int j = 0; j < M; ++j) {
      inv_p(j) = 1.0 / psi_p_(j);
      curv(j) = map_d2r(s_full_(j)) / (psi_p_(j) * psi_p_(j) * psi_p_(j));
    }
    d1_[parity] = inv_p.asDiagonal() * e1;
    d2_[parity] = (inv_p.array().square().matrix()).asDiagonal() * e2 -
                  curv.asDiagonal() * e1;
  }

  build_weights();

  // Barycentric weights of the doubled Chebyshev grid.
  bary_.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    double w = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0 || k == N) w *= 0.5;
    bary_(k) = w;
  }
}

double DiskGrid::map_r(double s) const {
  return s * (cluster_ + (1.0 - cluster_) * s * s);
}
double DiskGrid::map_dr(double s) const {
  return cluster_ + 3.0 * (1.0 - cluster_) * s * s;
}
double DiskGrid::map_d2r(double s) const { return 6.0 * (1.0 - cluster_) * s; }

void DiskGrid::build_weights() {
  const int M = n_r_;
  const int N = 2 * M - 1;
  // Interpolatory weights V_k on the doubled grid for the measure
  // |psi(s)| psi'(s) ds, exact for polynomial degree <= N. The moments of
  // the Chebyshev basis are themselves exact via Gauss-Legendre of matching
  // degree on [0, 1] (the measure is even, odd moments vanish).
  const int gl_n = N / 2 + 8;
  std::vector<double> gx, gw;
  gauss_legendre(gl_n, gx, gw);
  Eigen::VectorXd moments(N + 1);
  for (int n = 0; n <= N; ++n) {
    if (n % 2 == 1) {
      moments(n) = 0.0;
      continue;
    }
    double acc = 0.0;
    for (int q = 0; q < gl_n; ++q) {
      const double s = 0.5 * (gx[q] + 1.0);  // [0,1]
      acc += 0.5 * gw[q] * std::cos(n * std::acos(std::min(1.0, s))) * map_r(s) * map_dr(s);
    }
    moments(n) = 2.0 * acc;
  }
  Eigen::MatrixXd T(N + 1, N + 1);
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k <= N; ++k) T(n, k) = std::cos(n * kPi * k / N);
  const Eigen::VectorXd V = T.partialPivLu().solve(moments);

  wr_.resize(M);
  for (int j = 0; j < M; ++j) wr_(j) = 0.5 * (V(j) + V(N - j));
}

Eigen::MatrixXd DiskGrid::mode_laplacian(int m) const {
  const int parity = std::abs(m) % 2;
  Eigen::VectorXd inv_r = r_.cwiseInverse();
  Eigen::VectorXd inv_r2 = inv_r.array().square().matrix();
  Eigen::MatrixXd L = d2_[parity] + inv_r.asDiagonal() * d1_[parity];
  L -= (double(m) * double(m)) * Eigen::MatrixXd(inv_r2.asDiagonal());
  return L;
}

double DiskGrid::interp_radial(const Eigen::Ref<const Eigen::VectorXd>& values,
                               int parity, double r) const {
  const int M = n_r_;
  const int N = 2 * M - 1;
  // invert the odd cubic map: psi(s) = r, s in [-1, 1]
  double s = r;  // good initial guess for cluster ~ 1; Newton handles the rest
  for (int it = 0; it < 60; ++it) {
    const double g = map_r(s) - r;
    const double dg = map_dr(s);
    const double ds = g / dg;
    s -= ds;
    if (std::abs(ds) < 1e-15) break;
  }
  const double sigma = parity == 0 ? 1.0 : -1.0;
  double num = 0.0, den = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double val = (k < M) ? values(k) : sigma * values(N - k);
    const double d = s - s_full_(k);
    if (std::abs(d) < 1e-14) return val;
    const double t = bary_(k) / d;
    num += t * val;
    den += t;
  }
  return num / den;
}

DiskField sample(const std::shared_ptr<const DiskGrid>& grid,
                 const std::function<double(const Point2&)>& f) {
  DiskField out(grid);
  for (int j = 0; j < grid->n_r(); ++j)
    for (int i = 0; i < grid->n_theta(); ++i)
      out.values(j, i) = f(grid->node(j, i));
  return out;
}

}  // namespace liouville
