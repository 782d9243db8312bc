#pragma once

// Term-by-term evaluation of the three integral identities satisfied by
// solutions of -Delta v = lambda |x|^2 V e^v with zero boundary data, plus
// the concentration diagnostics (mass, vanishing moments, boundary normal
// derivative range). Audits consume a field; they never re-solve.

#include <string>
#include <utility>
#include <vector>

#include "liouville/disk_ops.hpp"
#include "liouville/potential.hpp"

namespace liouville {

struct IdentityTerms {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  double residual = 0.0;  ///< signed, LHS - RHS
};

struct AuditConfig {
  double identity_tol = 1e-6;      ///< |residual| threshold per identity
  double equation_tol = 1e-3;      ///< scaled equation residual for "is a solution"
  double mass_rel_tol = 0.03;      ///< |mass/16pi - 1| at the end of a branch
  double boundary_dev_tol = 0.05;  ///< relative deviation of dv/dnu from -8
  double moment_final_tol = 0.05;
};

struct PohozaevReport {
  IdentityTerms gradient_identity[2];  ///< x1- and x2-weighted
  IdentityTerms diff_identity;         ///< (x1^2 - x2^2)-weighted
  IdentityTerms cross_identity;        ///< x1 x2-weighted
  Point2 grad_origin{0.0, 0.0};
  double mass = 0.0;                   ///< lambda int |x|^2 V e^v
  double moment_diag = 0.0;            ///< lambda int e^v (V_x1 x1 - V_x2 x2)
  double moment_cross = 0.0;           ///< lambda int e^v (V_x1 x2 + V_x2 x1)
  double m1 = 0.0;                     ///< lambda int (g1 x1^2 - g2 x2^2) e^v
  double m2 = 0.0;                     ///< lambda int x1 x2 e^v
  double m3 = 0.0;                     ///< |grad v(0)|
  std::pair<double, double> boundary_normal_range{0.0, 0.0};
  double equation_residual = 0.0;      ///< scaled max norm of the PDE residual
  double max_boundary_value = 0.0;
  bool solution_like = false;          ///< identities applicable
  bool identities_pass = false;        ///< all residuals within identity_tol
};

IdentityTerms audit_gradient_identity(const DiskField& v, double lam, const Potential& V,
                                      int component);

std::pair<IdentityTerms, IdentityTerms> audit_pohozaev_pair(const DiskField& v, double lam,
                                                            const Potential& V);

double mass_concentration(const DiskField& v, double lam, const Potential& V);

/// (m1, m2, m3) of the vanishing-moment statements.
std::tuple<double, double, double> vanishing_moments(const DiskField& v, double lam,
                                                     const Potential& V);

PohozaevReport audit(const DiskField& v, double lam, const Potential& V,
                     const AuditConfig& cfg = {});

/// Flat key=value file at <base>.txt and one term per row at <base>.csv.
void write_report(const PohozaevReport& report, const std::string& path_base);

}  // namespace liouville
