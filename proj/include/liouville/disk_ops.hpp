#pragma once

// Spectral operations on DiskFields: angular transforms, polar Laplacian,
// Dirichlet Poisson solves, origin gradient extraction, and disk/boundary
// quadrature.

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "liouville/disk_grid.hpp"

namespace liouville {

/// Angular Fourier coefficients c_m(r), m = 0 .. n_theta/2, of a real field:
/// f(r, theta) = c_0 + 2 sum_{0<m<n/2} Re(c_m e^{i m theta}) + c_{n/2} cos(n/2 theta).
using FieldModes = Eigen::MatrixXcd;

FieldModes to_modes(const DiskField& f);
DiskField from_modes(const std::shared_ptr<const DiskGrid>& grid, const FieldModes& modes);

DiskField laplacian(const DiskField& f);

/// (df/dx1, df/dx2)(0) from the m = 1 mode profile c_1(r)/r continued to 0.
Point2 gradient_at_origin(const DiskField& f);

/// Radial derivative at r = 1, one value per angular node.
Eigen::VectorXd boundary_normal_derivative(const DiskField& f);

double integrate_disk(const DiskField& f);
double integrate_disk(const DiskField& f, const std::function<double(const Point2&)>& weight);

double integrate_boundary(const DiskField& f);
double integrate_boundary(const DiskField& f, const std::function<double(double)>& weight_theta);

/// Spectral evaluation at an arbitrary point of the closed disk.
double eval_field(const DiskField& f, const Point2& x);

/// sqrt of the H^1_0 seminorm integral(|grad u|^2) computed as <u, -Lap u>.
double h1_norm(const DiskField& f);

/// Dirichlet solver for -Delta u = rhs, u = 0 on the boundary circle.
/// Factors one dense radial system per angular mode at construction.
class DiskPoisson {
 public:
  explicit DiskPoisson(std::shared_ptr<const DiskGrid> grid);
  DiskField solve(const DiskField& rhs) const;
  const std::shared_ptr<const DiskGrid>& grid() const { return grid_; }

 private:
  std::shared_ptr<const DiskGrid> grid_;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;  // per mode, interior block
};

/// CSV serialization: columns r, theta, value (row-major by radius) with a
/// sidecar <path>.meta holding the grid shape.
void write_field(const DiskField& f, const std::string& path_base);
DiskField read_field(const std::string& path_base);

}  // namespace liouville
