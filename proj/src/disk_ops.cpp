#include "liouville/disk_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "liouville/fft.hpp"
#include "liouville/green.hpp"

namespace liouville {

FieldModes to_modes(const DiskField& f) {
  const int M = f.grid->n_r();
  const int n = f.grid->n_theta();
  FieldModes modes(M, n / 2 + 1);
  std::vector<std::complex<double>> buf(n);
  for (int j = 0; j < M; ++j) {
    for (int i = 0; i < n; ++i) buf[i] = f.values(j, i);
    fft_inplace(buf, false);
    for (int m = 0; m <= n / 2; ++m) modes(j, m) = buf[m] / double(n);
  }
  return modes;
}

DiskField from_modes(const std::shared_ptr<const DiskGrid>& grid, const FieldModes& modes) {
  const int M = grid->n_r();
  const int n = grid->n_theta();
  DiskField f(grid);
  std::vector<std::complex<double>> buf(n);
  for (int j = 0; j < M; ++j) {
    buf[0] = modes(j, 0);
    for (int m = 1; m < n / 2; ++m) {
      buf[m] = modes(j, m);
      buf[n - m] = std::conj(modes(j, m));
    }
    buf[n / 2] = modes(j, n / 2);
    fft_inplace(buf, true);
    for (int i = 0; i < n; ++i) f.values(j, i) = buf[i].real() * n;
  }
  return f;
}

namespace {

// y = A x for a complex mode profile with a real operator.
Eigen::VectorXcd apply_real(const Eigen::MatrixXd& A, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y(A.rows());
  y.real() = A * x.real();
  y.imag() = A * x.imag();
  return y;
}

}  // namespace

DiskField laplacian(const DiskField& f) {
  const auto& grid = f.grid;
  const int n = grid->n_theta();
  FieldModes modes = to_modes(f);
  for (int m = 0; m <= n / 2; ++m) {
    const Eigen::MatrixXd L = grid->mode_laplacian(m);
    modes.col(m) = apply_real(L, modes.col(m));
  }
  return from_modes(grid, modes);
}

Point2 gradient_at_origin(const DiskField& f) {
  const FieldModes modes = to_modes(f);
  const auto& grid = f.grid;
  const int M = grid->n_r();
  // c_1(r)/r is even across the center; its value at 0 is c_1'(0).
  Eigen::VectorXd re(M), im(M);
  for (int j = 0; j < M; ++j) {
    re(j) = modes(j, 1).real() / grid->radii()(j);
    im(j) = modes(j, 1).imag() / grid->radii()(j);
  }
  const double ar = grid->interp_radial(re, 0, 0.0);
  const double ai = grid->interp_radial(im, 0, 0.0);
  return {2.0 * ar, -2.0 * ai};
}

Eigen::VectorXd boundary_normal_derivative(const DiskField& f) {
  const auto& grid = f.grid;
  const int n = grid->n_theta();
  FieldModes modes = to_modes(f);
  FieldModes dmodes(modes.rows(), modes.cols());
  for (int m = 0; m <= n / 2; ++m)
    dmodes.col(m) = apply_real(grid->d1(m % 2), modes.col(m));
  const DiskField df = from_modes(grid, dmodes);
  return df.values.row(0).transpose();
}

double integrate_disk(const DiskField& f) {
  return integrate_disk(f, [](const Point2&) { return 1.0; });
}

double integrate_disk(const DiskField& f, const std::function<double(const Point2&)>& weight) {
  const auto& grid = f.grid;
  const Eigen::VectorXd& wr = grid->radial_area_weights();
  const double wa = grid->angular_weight();
  double acc = 0.0;
  for (int j = 0; j < grid->n_r(); ++j) {
    double ring = 0.0;
    for (int i = 0; i < grid->n_theta(); ++i)
      ring += f.values(j, i) * weight(grid->node(j, i));
    acc += wr(j) * ring;
  }
  return wa * acc;
}

double integrate_boundary(const DiskField& f) {
  return integrate_boundary(f, [](double) { return 1.0; });
}

double integrate_boundary(const DiskField& f, const std::function<double(double)>& weight_theta) {
  const auto& grid = f.grid;
  double acc = 0.0;
  for (int i = 0; i < grid->n_theta(); ++i)
    acc += f.values(0, i) * weight_theta(grid->theta(i));
  return grid->angular_weight() * acc;
}

double eval_field(const DiskField& f, const Point2& x) {
  const auto& grid = f.grid;
  const double r = x.norm();
  if (r > 1.0 + 1e-12) throw std::domain_error("eval_field: point outside the disk");
  const double th = std::atan2(x(1), x(0));
  const FieldModes modes = to_modes(f);
  const int nh = int(modes.cols()) - 1;
  double acc = 0.0;
  Eigen::VectorXd re(grid->n_r()), im(grid->n_r());
  for (int m = 0; m <= nh; ++m) {
    re = modes.col(m).real();
    im = modes.col(m).imag();
    const double cr = grid->interp_radial(re, m % 2, std::min(r, 1.0));
    const double ci = grid->interp_radial(im, m % 2, std::min(r, 1.0));
    if (m == 0)
      acc += cr;
    else if (m == nh)
      acc += cr * std::cos(m * th);
    else
      acc += 2.0 * (cr * std::cos(m * th) - ci * std::sin(m * th));
  }
  return acc;
}

double h1_norm(const DiskField& f) {
  const DiskField lap = laplacian(f);
  DiskField prod(f.grid);
  prod.values = -f.values.cwiseProduct(lap.values);
  const double v = integrate_disk(prod);
  return std::sqrt(std::max(0.0, v));
}

DiskPoisson::DiskPoisson(std::shared_ptr<const DiskGrid> grid) : grid_(std::move(grid)) {
  const int n = grid_->n_theta();
  const int M = grid_->n_r();
  lu_.reserve(n / 2 + 1);
  for (int m = 0; m <= n / 2; ++m) {
    const Eigen::MatrixXd L = grid_->mode_laplacian(m);
    // interior nodes j = 1..M-1; boundary value is pinned to zero
    lu_.emplace_back((-L.block(1, 1, M - 1, M - 1)).eval());
  }
}

DiskField DiskPoisson::solve(const DiskField& rhs) const {
  const int n = grid_->n_theta();
  const int M = grid_->n_r();
  FieldModes modes = to_modes(rhs);
  FieldModes sol = FieldModes::Zero(M, n / 2 + 1);
  for (int m = 0; m <= n / 2; ++m) {
    sol.col(m).tail(M - 1).real() = lu_[m].solve(modes.col(m).tail(M - 1).real().eval());
    sol.col(m).tail(M - 1).imag() = lu_[m].solve(modes.col(m).tail(M - 1).imag().eval());
  }
  return from_modes(grid_, sol);
}

}  // namespace liouville
