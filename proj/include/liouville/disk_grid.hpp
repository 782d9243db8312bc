#pragma once

// Polar tensor grid on the unit disk: Fourier in the angle, Chebyshev
// collocation in radius on the positive half of a doubled diameter grid.
// There is no node at r = 0; functions reach the origin through the parity
// of their angular mode (even modes extend evenly across the center, odd
// modes oddly). An odd cubic map s -> r = s (alpha + (1-alpha) s^2)
// optionally clusters nodes toward the center to resolve concentration
// profiles of width ~ lambda^{1/4}.

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "liouville/types.hpp"

namespace liouville {

class DiskGrid {
 public:
  /// n_r radial nodes in (0, 1], n_theta equispaced angles (even),
  /// cluster = map coefficient alpha in (0, 1]; 1 is the unmapped grid.
  DiskGrid(int n_r, int n_theta, double cluster = 1.0);

  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  double cluster() const { return cluster_; }

  /// Radii in descending order, radii()(0) = 1.
  const Eigen::VectorXd& radii() const { return r_; }
  double theta(int i) const { return 2.0 * 3.14159265358979323846 * i / n_theta_; }
  Point2 node(int j, int i) const {
    const double th = theta(i);
    return r_(j) * Point2(std::cos(th), std::sin(th));
  }

  /// Radial weights of the area quadrature: integral over the disk of f is
  /// angular_weight() * sum_{j,i} radial_area_weights()(j) * f(j, i).
  const Eigen::VectorXd& radial_area_weights() const { return wr_; }
  double angular_weight() const { return 2.0 * 3.14159265358979323846 / n_theta_; }

  /// Folded and mapped radial derivative operators; parity 0 acts on even
  /// angular modes, parity 1 on odd ones.
  const Eigen::MatrixXd& d1(int parity) const { return d1_[parity]; }
  const Eigen::MatrixXd& d2(int parity) const { return d2_[parity]; }

  /// d2/dr2 + (1/r) d/dr - m^2/r^2 for angular mode m (dense n_r x n_r).
  Eigen::MatrixXd mode_laplacian(int m) const;

  /// Barycentric evaluation at radius r in [0, 1] of a radial mode profile
  /// given at the grid radii, extended across the center with the parity of
  /// its angular mode.
  double interp_radial(const Eigen::Ref<const Eigen::VectorXd>& values, int parity,
                       double r) const;

  double min_radius() const { return r_(n_r_ - 1); }

 private:
  void build_weights();
  double map_r(double s) const;
  double map_dr(double s) const;
  double map_d2r(double s) const;

  int n_r_, n_theta_;
  double cluster_;
  Eigen::VectorXd s_full_;  // doubled Chebyshev nodes, size 2 n_r
  Eigen::VectorXd r_, psi_p_, wr_, bary_;
  Eigen::MatrixXd d1_[2], d2_[2];
};

/// Scalar field on a DiskGrid; values(j, i) = f(radius j, angle i).
struct DiskField {
  std::shared_ptr<const DiskGrid> grid;
  Eigen::MatrixXd values;

  DiskField() = default;
  explicit DiskField(std::shared_ptr<const DiskGrid> g)
      : grid(std::move(g)), values(Eigen::MatrixXd::Zero(grid->n_r(), grid->n_theta())) {}
};

inline std::shared_ptr<const DiskGrid> make_grid(int n_r, int n_theta,
                                                 double cluster = 1.0) {
  return std::make_shared<const DiskGrid>(n_r, n_theta, cluster);
}

DiskField sample(const std::shared_ptr<const DiskGrid>& grid,
                 const std::function<double(const Point2&)>& f);

}  // namespace liouville
