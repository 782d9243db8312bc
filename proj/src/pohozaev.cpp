#include "liouville/pohozaev.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "liouville/green.hpp"

namespace liouville {

namespace {

DiskField exp_field(const DiskField& v) {
  DiskField out(v.grid);
  out.values = v.values.array().exp().matrix();
  return out;
}

double boundary_weighted(const DiskField& v, const Eigen::VectorXd& bnd,
                         const std::function<double(double)>& w, int power) {
  const auto& grid = v.grid;
  double acc = 0.0;
  for (int i = 0; i < grid->n_theta(); ++i) {
    const double th = grid->theta(i);
    acc += (power == 2 ? bnd(i) * bnd(i) : bnd(i)) * w(th);
  }
  return grid->angular_weight() * acc;
}

}  // namespace

IdentityTerms audit_gradient_identity(const DiskField& v, double lam, const Potential& V,
                                      int component) {
  const Eigen::VectorXd bnd = boundary_normal_derivative(v);
  const DiskField ev = exp_field(v);
  auto xi = [component](double th) { return component == 0 ? std::cos(th) : std::sin(th); };

  IdentityTerms out;
  out.name = component == 0 ? "gradient_x1" : "gradient_x2";
  const double t_nu2 = 0.5 * boundary_weighted(v, bnd, xi, 2);
  const double t_pot = lam * integrate_boundary(
                                 sample(v.grid, [&](const Point2& x) { return V(x); }),
                                 xi);
  const double t_nu = 2.0 * boundary_weighted(v, bnd, xi, 1);
  const Point2 g0 = gradient_at_origin(v);
  const double t_grad = 4.0 * kPi * g0(component);
  const double t_vol = lam * integrate_disk(ev, [&](const Point2& x) {
    return x.squaredNorm() * V.gradient(x)(component);
  });
  out.terms = {{"half_bnd_normsq", t_nu2},
               {"lambda_bnd_potential", t_pot},
               {"two_bnd_norm", t_nu},
               {"four_pi_grad_origin", t_grad},
               {"lambda_vol_gradV", t_vol}};
  out.residual = t_nu2 + t_pot + t_nu - t_grad - t_vol;
  return out;
}

std::pair<IdentityTerms, IdentityTerms> audit_pohozaev_pair(const DiskField& v, double lam,
                                                            const Potential& V) {
  const Eigen::VectorXd bnd = boundary_normal_derivative(v);
  const DiskField ev = exp_field(v);
  const Point2 g0 = gradient_at_origin(v);
  const DiskField vfield = sample(v.grid, [&](const Point2& x) { return V(x); });

  IdentityTerms diff;
  diff.name = "pair_diff";
  {
    const double lhs = lam * integrate_disk(ev, [&](const Point2& x) {
      const Point2 g = V.gradient(x);
      return g(0) * x(0) - g(1) * x(1);
    });
    auto w = [](double th) { return std::cos(2.0 * th); };  // x1^2 - x2^2 on the circle
    const double r_pot = lam * integrate_boundary(vfield, w);
    const double r_nu2 = 0.5 * boundary_weighted(v, bnd, w, 2);
    const double r_grad = -kPi * g0(0) * g0(0) + kPi * g0(1) * g0(1);
    diff.terms = {{"lhs_vol_moment", lhs},
                  {"lambda_bnd_potential", r_pot},
                  {"half_bnd_normsq", r_nu2},
                  {"pi_grad_origin", r_grad}};
    diff.residual = lhs - (r_pot + r_nu2 + r_grad);
  }

  IdentityTerms cross;
  cross.name = "pair_cross";
  {
    const double lhs = lam * integrate_disk(ev, [&](const Point2& x) {
      const Point2 g = V.gradient(x);
      return g(0) * x(1) + g(1) * x(0);
    });
    auto w = [](double th) { return 0.5 * std::sin(2.0 * th); };  // x1 x2 on the circle
    const double r_pot = 2.0 * lam * integrate_boundary(vfield, w);
    const double r_nu2 = boundary_weighted(v, bnd, w, 2);
    const double r_grad = -2.0 * kPi * g0(0) * g0(1);
    cross.terms = {{"lhs_vol_moment", lhs},
                   {"two_lambda_bnd_potential", r_pot},
                   {"bnd_normsq", r_nu2},
                   {"two_pi_grad_origin", r_grad}};
    cross.residual = lhs - (r_pot + r_nu2 + r_grad);
  }
  return {diff, cross};
}

double mass_concentration(const DiskField& v, double lam, const Potential& V) {
  const DiskField ev = exp_field(v);
  return lam * integrate_disk(ev, [&](const Point2& x) { return x.squaredNorm() * V(x); });
}

std::tuple<double, double, double> vanishing_moments(const DiskField& v, double lam,
                                                     const Potential& V) {
  const DiskField ev = exp_field(v);
  const double m1 = lam * integrate_disk(ev, [&](const Point2& x) {
    return V.gamma1() * x(0) * x(0) - V.gamma2() * x(1) * x(1);
  });
  const double m2 = lam * integrate_disk(ev, [&](const Point2& x) { return x(0) * x(1); });
  const double m3 = gradient_at_origin(v).norm();
  return {m1, m2, m3};
}

PohozaevReport audit(const DiskField& v, double lam, const Potential& V,
                     const AuditConfig& cfg) {
  PohozaevReport rep;
  rep.gradient_identity[0] = audit_gradient_identity(v, lam, V, 0);
  rep.gradient_identity[1] = audit_gradient_identity(v, lam, V, 1);
  std::tie(rep.diff_identity, rep.cross_identity) = audit_pohozaev_pair(v, lam, V);
  rep.grad_origin = gradient_at_origin(v);
  rep.mass = mass_concentration(v, lam, V);
  const DiskField ev = exp_field(v);
  rep.moment_diag = lam * integrate_disk(ev, [&](const Point2& x) {
    const Point2 g = V.gradient(x);
    return g(0) * x(0) - g(1) * x(1);
  });
  rep.moment_cross = lam * integrate_disk(ev, [&](const Point2& x) {
    const Point2 g = V.gradient(x);
    return g(0) * x(1) + g(1) * x(0);
  });
  std::tie(rep.m1, rep.m2, rep.m3) = vanishing_moments(v, lam, V);
  const Eigen::VectorXd bnd = boundary_normal_derivative(v);
  rep.boundary_normal_range = {bnd.minCoeff(), bnd.maxCoeff()};

  // applicability: the field must carry zero boundary data and satisfy the
  // equation up to the stated scaled residual
  const DiskField lap = laplacian(v);
  double src_max = 0.0, res_max = 0.0;
  for (int j = 1; j < v.grid->n_r(); ++j)
    for (int i = 0; i < v.grid->n_theta(); ++i) {
      const Point2 x = v.grid->node(j, i);
      const double src = lam * x.squaredNorm() * V(x) * std::exp(v.values(j, i));
      src_max = std::max(src_max, std::abs(src));
      res_max = std::max(res_max, std::abs(-lap.values(j, i) - src));
    }
  rep.equation_residual = res_max / std::max(1.0, src_max);
  rep.max_boundary_value = v.values.row(0).cwiseAbs().maxCoeff();
  rep.solution_like =
      rep.equation_residual <= cfg.equation_tol && rep.max_boundary_value <= 1e-6;
  rep.identities_pass = rep.solution_like &&
                        std::abs(rep.gradient_identity[0].residual) <= cfg.identity_tol &&
                        std::abs(rep.gradient_identity[1].residual) <= cfg.identity_tol &&
                        std::abs(rep.diff_identity.residual) <= cfg.identity_tol &&
                        std::abs(rep.cross_identity.residual) <= cfg.identity_tol;
  return rep;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_report(const PohozaevReport& rep, const std::string& path_base) {
  std::ofstream txt(path_base + ".txt");
  auto put = [&](const std::string& k, double x) { txt << k << "=" << fmt(x) << "\n"; };
  for (const IdentityTerms* id :
       {&rep.gradient_identity[0], &rep.gradient_identity[1], &rep.diff_identity,
        &rep.cross_identity})
    put(id->name + ".residual", id->residual);
  put("grad_origin_x1", rep.grad_origin(0));
  put("grad_origin_x2", rep.grad_origin(1));
  put("mass", rep.mass);
  put("moment_diag", rep.moment_diag);
  put("moment_cross", rep.moment_cross);
  put("m1", rep.m1);
  put("m2", rep.m2);
  put("m3", rep.m3);
  put("boundary_normal_min", rep.boundary_normal_range.first);
  put("boundary_normal_max", rep.boundary_normal_range.second);
  put("equation_residual", rep.equation_residual);
  put("max_boundary_value", rep.max_boundary_value);
  txt << "solution_like=" << (rep.solution_like ? "true" : "false") << "\n";
  txt << "identities_pass=" << (rep.identities_pass ? "true" : "false") << "\n";

  std::ofstream csv(path_base + ".csv");
  csv << "identity,term,value\n";
  for (const IdentityTerms* id :
       {&rep.gradient_identity[0], &rep.gradient_identity[1], &rep.diff_identity,
        &rep.cross_identity}) {
    for (const auto& [name, value] : id->terms)
      csv << id->name << ',' << name << ',' << fmt(value) << '\n';
    csv << id->name << ",residual," << fmt(id->residual) << '\n';
  }
}

}  // namespace liouville
