// Batch experiment runner for the singular Liouville laboratory.
//
//   liouville_cli <classify|continue|solve|audit|integrals|scaling|fit>
//                 --config <path> [--out <dir>] [--seed <u64>] [--threads <n>]
//
// Exit codes: 0 pass, 1 audit failure, 2 solver failure, 3 config error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "config.hpp"
#include "liouville/asymptotics.hpp"
#include "liouville/bubble.hpp"
#include "liouville/green.hpp"
#include "liouville/pohozaev.hpp"
#include "liouville/reduction.hpp"
#include "liouville/solver.hpp"
#include "liouville/special_integrals.hpp"

namespace fs = std::filesystem;
using namespace liouville;
using liouville_cli::Config;

namespace {

constexpr const char* kVersion = "liouville 0.1.0";

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string fmt17(double v) { return fmt(v, "%.17g"); }

struct CommonArgs {
  std::string config_path;
  std::string out = "out";
  unsigned long long seed = 0;
  int threads = 1;
};

void write_manifest(const CommonArgs& args, const Config& cfg, const std::string& command,
                    const std::map<std::string, std::string>& thresholds) {
  std::ofstream m(fs::path(args.out) / "manifest.txt");
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(cfg.hash()));
  m << "command=" << command << "\n"
    << "version=" << kVersion << "\n"
    << "config_hash=" << hash << "\n"
    << "seed=" << args.seed << "\n"
    << "threads=" << args.threads << " # execution is single-threaded deterministic\n";
  for (const auto& [k, v] : thresholds) m << "threshold." << k << "=" << v << "\n";
}

struct PotentialSetup {
  Potential V;
  double rotation = 0.0;  ///< eigenframe angle when a full Hessian was given
  bool rotated = false;
};

PotentialSetup build_potential(const Config& cfg) {
  double g1, g2, rot = 0.0;
  bool rotated = false;
  if (cfg.has("potential", "h11") || cfg.has("potential", "h12") ||
      cfg.has("potential", "h22")) {
    if (cfg.has("potential", "gamma1") || cfg.has("potential", "gamma2"))
      throw std::runtime_error("config: give either gamma1/gamma2 or h11/h12/h22, not both");
    const double h11 = cfg.num("potential", "h11", 0.0);
    const double h12 = cfg.num("potential", "h12", 0.0);
    const double h22 = cfg.num("potential", "h22", 0.0);
    rot = 0.5 * std::atan2(2.0 * h12, h11 - h22);
    double c = std::cos(rot), s = std::sin(rot);
    g1 = c * c * h11 + 2.0 * c * s * h12 + s * s * h22;
    g2 = s * s * h11 - 2.0 * c * s * h12 + c * c * h22;
    if (std::abs(g1) > std::abs(g2)) {  // orient the weak-|gamma| axis first
      std::swap(g1, g2);
      rot += 0.5 * kPi;
    }
    rotated = true;
  } else {
    if (!cfg.has("potential", "gamma1") || !cfg.has("potential", "gamma2"))
      throw std::runtime_error("config: [potential] needs gamma1 and gamma2 (or a Hessian)");
    g1 = cfg.num("potential", "gamma1", 0.0);
    g2 = cfg.num("potential", "gamma2", 0.0);
  }
  std::vector<PolyTerm> higher;
  if (cfg.has("potential", "r4")) {
    const double c4 = cfg.num("potential", "r4", 0.0);
    higher.push_back({4, 0, c4});
    higher.push_back({2, 2, 2.0 * c4});
    higher.push_back({0, 4, c4});
  }
  for (const auto& [key, val] : cfg.sections().count("potential")
                                    ? cfg.sections().at("potential")
                                    : std::map<std::string, std::string>{}) {
    if (key.rfind("c_", 0) != 0) continue;
    const auto mid = key.find('_', 2);
    if (mid == std::string::npos)
      throw std::runtime_error("config: malformed polynomial key " + key);
    higher.push_back(
        {std::stoi(key.substr(2, mid - 2)), std::stoi(key.substr(mid + 1)), std::stod(val)});
  }
  return {Potential(g1, g2, std::move(higher)), rot, rotated};
}

SolverConfig build_solver_config(const Config& cfg) {
  SolverConfig sc;
  sc.lambda_start = cfg.num("solver", "lambda_start", sc.lambda_start);
  sc.lambda_end = cfg.num("solver", "lambda_end", sc.lambda_end);
  sc.lambda_ratio = cfg.num("solver", "ratio", sc.lambda_ratio);
  sc.newton_tol = cfg.num("solver", "newton_tol", sc.newton_tol);
  sc.max_iterations = cfg.integer("solver", "max_iterations", sc.max_iterations);
  sc.m_box = cfg.num("solver", "m_box", sc.m_box);
  sc.n_r = cfg.integer("grid", "n_r", sc.n_r);
  sc.n_theta = cfg.integer("grid", "n_theta", sc.n_theta);
  sc.cluster = cfg.num("grid", "cluster", 0.0);
  return sc;
}

AuditConfig build_audit_config(const Config& cfg) {
  AuditConfig ac;
  ac.identity_tol = cfg.num("audit", "identity_tol", ac.identity_tol);
  ac.equation_tol = cfg.num("audit", "equation_tol", ac.equation_tol);
  ac.mass_rel_tol = cfg.num("audit", "mass_rel_tol", ac.mass_rel_tol);
  ac.boundary_dev_tol = cfg.num("audit", "boundary_dev_tol", ac.boundary_dev_tol);
  ac.moment_final_tol = cfg.num("audit", "moment_final_tol", ac.moment_final_tol);
  return ac;
}

QuadratureSpec build_quadrature_spec(const Config& cfg) {
  QuadratureSpec q;
  q.radius = cfg.num("quadrature", "radius", 0.0);
  q.tolerance = cfg.num("quadrature", "tolerance", q.tolerance);
  q.subdivision_limit = cfg.integer("quadrature", "subdivision_limit", q.subdivision_limit);
  return q;
}

const std::set<std::string> kPotentialKeys = {"gamma1", "gamma2", "h11",
                                              "h12",    "h22",    "r4"};
const std::set<std::string> kGridKeys = {"n_r", "n_theta", "cluster"};
const std::set<std::string> kSolverKeys = {"lambda_start", "lambda_end", "ratio",
                                           "newton_tol",   "max_iterations",
                                           "m_box",        "lambda", "initial"};
const std::set<std::string> kQuadKeys = {"radius", "tolerance", "subdivision_limit"};
const std::set<std::string> kAuditKeys = {"field",        "lambda",
                                          "identity_tol", "equation_tol",
                                          "mass_rel_tol", "boundary_dev_tol",
                                          "moment_final_tol"};

int cmd_classify(const CommonArgs& args, const Config& cfg) {
  cfg.validate({{"potential", kPotentialKeys}, {"quadrature", kQuadKeys}});
  const PotentialSetup ps = build_potential(cfg);
  const QuadratureSpec q = build_quadrature_spec(cfg);
  const Classification cls = classify(ps.V, q);

  std::ostringstream out;
  if (ps.rotated)
    out << "rotation angle = " << fmt(ps.rotation)
        << "; eigenvalues = (" << fmt(ps.V.gamma1()) << ", " << fmt(ps.V.gamma2()) << ")\n";
  if (cls.exists) {
    const char* sgn = cls.b1_sign > 0 ? "b1 > 0" : (cls.b1_sign < 0 ? "b1 < 0" : "b1 = 0");
    out << "blow-up family EXISTS; " << sgn
        << "; b1_tilde_star = " << fmt(*cls.b_tilde_star) << "\n";
  } else {
    out << "NO blow-up family (det D2V(0) <= 0)\n";
  }
  std::cout << out.str();
  std::ofstream(fs::path(args.out) / "classification.txt") << out.str();
  write_manifest(args, cfg, "classify", {});
  return 0;
}

void write_branch_summary(const std::string& path, const Potential& V,
                          const std::vector<SolveResult>& branch,
                          const std::vector<PohozaevReport>& reports) {
  std::ofstream csv(path);
  csv << "lambda,max_v,mass,b1_fit,b2_fit,tau_fit,sup_err,indicator,grad0_x1,grad0_x2,"
         "m1,m2,res_grad_x1,res_grad_x2,res_diff,res_cross,bnd_min,bnd_max,"
         "newton_iterations,final_residual,c1,c2,b1_used,b2_used,audit_pass\n";
  for (size_t k = 0; k < branch.size(); ++k) {
    const SolveResult& r = branch[k];
    const PohozaevReport& rep = reports[k];
    const double ind = simple_blowup_indicator(r.field, r.lambda);
    csv << fmt17(r.lambda) << ',' << fmt17(r.field.values.maxCoeff()) << ','
        << fmt17(rep.mass) << ',' << fmt17(r.b_fit.real()) << ',' << fmt17(r.b_fit.imag())
        << ',' << fmt17(r.tau_fit) << ',' << fmt17(r.fit_sup_err) << ',' << fmt17(ind) << ','
        << fmt17(rep.grad_origin(0)) << ',' << fmt17(rep.grad_origin(1)) << ','
        << fmt17(rep.m1) << ',' << fmt17(rep.m2) << ','
        << fmt17(rep.gradient_identity[0].residual) << ','
        << fmt17(rep.gradient_identity[1].residual) << ','
        << fmt17(rep.diff_identity.residual) << ',' << fmt17(rep.cross_identity.residual)
        << ',' << fmt17(rep.boundary_normal_range.first) << ','
        << fmt17(rep.boundary_normal_range.second) << ',' << r.newton_iterations << ','
        << fmt17(r.final_residual_norm) << ',' << fmt17(r.c1) << ',' << fmt17(r.c2) << ','
        << fmt17(r.b_used.real()) << ',' << fmt17(r.b_used.imag()) << ','
        << (rep.identities_pass ? 1 : 0) << '\n';
  }
  (void)V;
}

int cmd_continue(const CommonArgs& args, const Config& cfg) {
  cfg.validate({{"potential", kPotentialKeys},
                {"grid", kGridKeys},
                {"solver", kSolverKeys},
                {"audit", kAuditKeys},
                {"quadrature", kQuadKeys}});
  const PotentialSetup ps = build_potential(cfg);
  const SolverConfig sc = build_solver_config(cfg);
  const AuditConfig ac = build_audit_config(cfg);
  write_manifest(args, cfg, "continue",
                 {{"identity_tol", fmt17(ac.identity_tol)},
                  {"mass_rel_tol", fmt17(ac.mass_rel_tol)},
                  {"boundary_dev_tol", fmt17(ac.boundary_dev_tol)},
                  {"moment_final_tol", fmt17(ac.moment_final_tol)},
                  {"newton_tol", fmt17(sc.newton_tol)}});

  const Classification cls = classify(ps.V);
  if (!cls.exists) {
    std::cerr << "continue: classification excludes a blow-up family; refusing to run\n";
    return 2;
  }
  {
    const double cl = sc.cluster > 0 ? sc.cluster : auto_cluster(sc.lambda_end);
    DiskGrid probe(sc.n_r, sc.n_theta, cl);
    if (grid_underresolves(probe, sc.lambda_end))
      std::cerr << "warning: concentration scale lambda^(1/4) is under-resolved by the "
                   "radial grid near the origin; increase n_r or lower cluster\n";
  }

  const std::vector<SolveResult> branch = continuation_run(ps.V, sc);
  if (branch.empty()) {
    std::cerr << "continue: no continuation point converged\n";
    return 2;
  }
  std::vector<PohozaevReport> reports;
  reports.reserve(branch.size());
  bool audits_pass = true;
  for (size_t k = 0; k < branch.size(); ++k) {
    reports.push_back(audit(branch[k].field, branch[k].lambda, ps.V, ac));
    char name[64];
    std::snprintf(name, sizeof(name), "field_%03zu", k);
    write_field(branch[k].field, (fs::path(args.out) / name).string());
    if (!reports.back().identities_pass) {
      audits_pass = false;
      std::cerr << "audit failure at lambda=" << fmt(branch[k].lambda)
                << " (identity residuals above " << fmt(ac.identity_tol) << ")\n";
    }
  }
  // end-of-branch diagnostics
  const PohozaevReport& last = reports.back();
  const SolveResult& lastr = branch.back();
  const double mass_rel = std::abs(last.mass / (16.0 * kPi) - 1.0);
  const double bnd_dev =
      std::max(std::abs(last.boundary_normal_range.first + 8.0),
               std::abs(last.boundary_normal_range.second + 8.0)) / 8.0;
  if (mass_rel > ac.mass_rel_tol) {
    audits_pass = false;
    std::cerr << "audit failure: final mass " << fmt(last.mass) << " deviates from 16*pi by "
              << fmt(mass_rel) << "\n";
  }
  if (bnd_dev > ac.boundary_dev_tol) {
    audits_pass = false;
    std::cerr << "audit failure: boundary normal derivative deviates from -8 by "
              << fmt(bnd_dev) << "\n";
  }
  if (std::abs(last.m1) > ac.moment_final_tol || std::abs(last.m2) > ac.moment_final_tol) {
    audits_pass = false;
    std::cerr << "audit failure: final vanishing moments (" << fmt(last.m1) << ", "
              << fmt(last.m2) << ") above " << fmt(ac.moment_final_tol) << "\n";
  }

  write_branch_summary((fs::path(args.out) / "branch_summary.csv").string(), ps.V, branch,
                       reports);

  std::vector<double> indicators;
  for (const SolveResult& r : branch)
    indicators.push_back(simple_blowup_indicator(r.field, r.lambda));
  const double ind_rise =
      *std::max_element(indicators.begin(), indicators.end()) - indicators.front();
  std::ofstream summary(fs::path(args.out) / "summary.txt");
  summary << "points=" << branch.size() << "\n"
          << "final_lambda=" << fmt17(lastr.lambda) << "\n"
          << "final_mass=" << fmt17(last.mass) << "\n"
          << "final_max_v=" << fmt17(lastr.field.values.maxCoeff()) << "\n"
          << "indicator_rise=" << fmt17(ind_rise) << "\n"
          << "non_simple_flag=" << (ind_rise > 3.0 ? "true" : "false") << "\n"
          << "audits_pass=" << (audits_pass ? "true" : "false") << "\n";

  const bool reached = lastr.lambda <= sc.lambda_end * (1.0 + 1e-9);
  if (!reached) {
    std::cerr << "continue: branch aborted at lambda=" << fmt(lastr.lambda) << "\n";
    return 2;
  }
  return audits_pass ? 0 : 1;
}

int cmd_solve(const CommonArgs& args, const Config& cfg) {
  cfg.validate({{"potential", kPotentialKeys},
                {"grid", kGridKeys},
                {"solver", kSolverKeys},
                {"audit", kAuditKeys}});
  const PotentialSetup ps = build_potential(cfg);
  SolverConfig sc = build_solver_config(cfg);
  const double lam = cfg.num("solver", "lambda", 1e-1);
  const std::string init_kind = cfg.str("solver", "initial", "zero");
  const AuditConfig ac = build_audit_config(cfg);
  write_manifest(args, cfg, "solve",
                 {{"newton_tol", fmt17(sc.newton_tol)},
                  {"identity_tol", fmt17(ac.identity_tol)}});

  const double cl = sc.cluster > 0 ? sc.cluster : auto_cluster(lam);
  auto grid = make_grid(sc.n_r, sc.n_theta, cl);
  if (grid_underresolves(*grid, lam))
    std::cerr << "warning: lambda^(1/4) under-resolved near the origin\n";
  DiskField init(grid);
  if (init_kind == "bubble") {
    const Complex b = predict_b(lam, ps.V.gamma1(), ps.V.gamma2());
    DiskPoisson poisson(grid);
    DiskField wb = sample(grid, [&](const Point2& x) { return weight_exp_w(lam, b, x); });
    init = poisson.solve(wb);
  } else if (init_kind != "zero") {
    throw std::runtime_error("config: [solver] initial must be 'zero' or 'bubble'");
  }

  const SolveResult res = newton_solve(lam, ps.V, init, sc);
  std::ofstream summary(fs::path(args.out) / "solve_summary.txt");
  summary << "lambda=" << fmt17(lam) << "\n"
          << "converged=" << (res.converged ? "true" : "false") << "\n"
          << "newton_iterations=" << res.newton_iterations << "\n"
          << "final_residual=" << fmt17(res.final_residual_norm) << "\n"
          << "max_v=" << fmt17(res.field.values.maxCoeff()) << "\n"
          << "min_eigenvalue_estimate=" << fmt17(res.min_eigenvalue_estimate) << "\n"
          << "near_singular_warning=" << (res.near_singular_warning ? "true" : "false")
          << "\n";
  write_field(res.field, (fs::path(args.out) / "field").string());
  if (!res.converged) {
    std::cerr << "solve: newton did not converge (residual " << fmt(res.final_residual_norm)
              << ")\n";
    return 2;
  }
  const PohozaevReport rep = audit(res.field, lam, ps.V, ac);
  write_report(rep, (fs::path(args.out) / "audit").string());
  return rep.identities_pass ? 0 : 1;
}

int cmd_audit(const CommonArgs& args, const Config& cfg) {
  cfg.validate({{"potential", kPotentialKeys}, {"audit", kAuditKeys}});
  const PotentialSetup ps = build_potential(cfg);
  const AuditConfig ac = build_audit_config(cfg);
  if (!cfg.has("audit", "field") || !cfg.has("audit", "lambda"))
    throw std::runtime_error("config: [audit] needs field=<path base> and lambda=<value>");
  const std::string base = cfg.str("audit", "field", "");
  const double lam = cfg.num("audit", "lambda", 0.0);
  write_manifest(args, cfg, "audit", {{"identity_tol", fmt17(ac.identity_tol)}});

  const DiskField v = read_field(base);
  const PohozaevReport rep = audit(v, lam, ps.V, ac);
  write_report(rep, (fs::path(args.out) / "audit").string());
  std::cout << "equation_residual=" << fmt(rep.equation_residual) << "\n";
  for (const IdentityTerms* id : {&rep.gradient_identity[0], &rep.gradient_identity[1],
                                  &rep.diff_identity, &rep.cross_identity})
    std::cout << id->name << ".residual=" << fmt(id->residual) << "\n";
  if (!rep.solution_like) {
    std::cout << "flag: field is NOT a solution at this (lambda, V); identities not "
                 "applicable\n";
    return 1;
  }
  std::cout << "mass=" << fmt(rep.mass) << "\n";
  return rep.identities_pass ? 0 : 1;
}

int cmd_integrals(const CommonArgs& args, const Config& cfg) {
  cfg.validate({{"quadrature", kQuadKeys}, {"integrals", {"xi_list"}}});
  const QuadratureSpec q = build_quadrature_spec(cfg);
  const std::vector<double> xis =
      cfg.list("integrals", "xi_list", {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0,
                                        50.0, -50.0});
  write_manifest(args, cfg, "integrals", {{"tolerance", fmt17(q.tolerance)}});

  std::ostringstream out;
  std::ofstream csv(fs::path(args.out) / "integrals.csv");
  csv << "xi1,I,J,F1,F2,detDF,offdiag_max\n";
  bool all_pass = true;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    all_pass = all_pass && ok;
  };

  // benchmark block
  {
    auto f1 = [](const Point2& z) {
      const double d = 1.0 + z.squaredNorm();
      return 1.0 / (d * d);
    };
    auto f2 = [](const Point2& z) {
      const double d = 1.0 + z.squaredNorm();
      return z(0) * z(0) / (d * d * d);
    };
    QuadratureSpec qb = q;
    if (qb.radius <= 0) qb.radius = tail_radius_quartic(0.0, qb.tolerance);
    const double b1 = integrate_radial_decay(f1, Point2(0, 0), qb).value;
    qb.radius = tail_radius_sextic(0.0, qb.tolerance);
    const double b2 = integrate_radial_decay(f2, Point2(0, 0), qb).value;
    out << "benchmark integral de (1+|z|^2)^-2 = " << fmt(b1, "%.15g")
        << "  (error " << fmt(b1 - kPi, "%.3g") << ")\n";
    out << "benchmark integral z1^2 (1+|z|^2)^-3 = " << fmt(b2, "%.15g")
        << "  (error " << fmt(b2 - kPi / 4.0, "%.3g") << ")\n";
    check("benchmark_pi", std::abs(b1 - kPi) <= 1e-8);
    check("benchmark_pi_over_4", std::abs(b2 - kPi / 4.0) <= 1e-8);
  }

  std::map<double, double> I_at, J_at;
  out << "   xi1            I             J            F1        detDF\n";
  for (double xi : xis) {
    const double I = integral_I(Point2(xi, 0.0), q);
    const double J = integral_J(xi, q);
    I_at[xi] = I;
    J_at[xi] = J;
    const Point2 F = field_F(Point2(xi, 0.0), q);
    std::string detstr = "-", offstr = "-";
    double det = 0.0, off = 0.0;
    if (std::abs(xi) <= 5.0) {
      const Eigen::Matrix2d DF = jacobian_F_on_axis(xi, q);
      det = DF.determinant();
      off = std::max(std::abs(DF(0, 1)), std::abs(DF(1, 0)));
      detstr = fmt(det, "%.6g");
      offstr = fmt(off, "%.3g");
    }
    out << fmt(xi, "%6.2f") << "  " << fmt(I, "%12.9f") << "  " << fmt(J, "%12.9f") << "  "
        << fmt(F(0), "%12.9f") << "  " << detstr << "\n";
    csv << fmt17(xi) << ',' << fmt17(I) << ',' << fmt17(J) << ',' << fmt17(F(0)) << ','
        << fmt17(F(1)) << ',' << (std::abs(xi) <= 5.0 ? fmt17(det) : "") << ','
        << (std::abs(xi) <= 5.0 ? fmt17(off) : "") << '\n';
  }

  // oddness, quarter law, monotonicity, limits
  bool odd_ok = true, quarter_ok = true;
  for (double xi : xis) {
    if (xi <= 0.0 || !I_at.count(-xi)) continue;
    odd_ok = odd_ok && std::abs(I_at[xi] + I_at[-xi]) <= 1e-7 &&
             std::abs(J_at[xi] + J_at[-xi]) <= 1e-7;
  }
  for (double xi : xis) quarter_ok = quarter_ok && std::abs(J_at[xi] - I_at[xi] / 4.0) <= 1e-7;
  bool mono_ok = true;
  {
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& [xi, Jv] : J_at) {
      mono_ok = mono_ok && Jv > prev;
      prev = Jv;
    }
  }
  check("oddness_I_and_J", odd_ok);
  check("J_equals_I_over_4", quarter_ok);
  check("J_strictly_increasing", mono_ok);
  if (I_at.count(50.0)) {
    check("I_limit_pi_at_50", std::abs(I_at[50.0] - kPi) <= 0.02 * kPi);
    check("J_limit_pi_over_4_at_50", std::abs(J_at[50.0] - kPi / 4.0) <= 0.02 * kPi / 4.0);
  }
  {
    bool df_ok = true;
    for (double xi : {0.0, 0.5, 1.0, 2.0}) {
      const Eigen::Matrix2d DF = jacobian_F_on_axis(xi, q);
      df_ok = df_ok && DF.determinant() > 0.0 &&
              std::max(std::abs(DF(0, 1)), std::abs(DF(1, 0))) <= 1e-7;
    }
    check("DF_positive_definite_diag_on_axis", df_ok);
  }

  std::cout << out.str();
  std::ofstream(fs::path(args.out) / "integrals.txt") << out.str();
  return all_pass ? 0 : 1;
}

int cmd_scaling(const CommonArgs& args, const Config& cfg) {
  cfg.validate({{"potential", kPotentialKeys},
                {"scaling", {"weight_pairs", "error_p", "lambdas", "b_rule"}}});
  const PotentialSetup ps = build_potential(cfg);
  std::vector<double> lambdas = cfg.list(
      "scaling", "lambdas", {1e-1, 3.1622776601683794e-2, 1e-2, 3.1622776601683794e-3, 1e-3});
  const std::string b_rule_name = cfg.str("scaling", "b_rule", "predict");
  write_manifest(args, cfg, "scaling", {});

  std::function<Complex(double)> b_rule;
  if (b_rule_name == "zero")
    b_rule = [](double) { return Complex(0.0, 0.0); };
  else if (b_rule_name == "predict") {
    const double g1 = ps.V.gamma1(), g2 = ps.V.gamma2();
    const double root = g1 * g2 > 0 ? solve_reduced_equation(g1, g2) : 0.0;
    b_rule = [root](double lam) { return Complex(std::sqrt(lam / 32.0) * root, 0.0); };
  } else {
    throw std::runtime_error("config: [scaling] b_rule must be 'predict' or 'zero'");
  }

  std::ofstream summary(fs::path(args.out) / "scaling_summary.csv");
  summary << "kind,s,p,slope,theory,r_squared,ok\n";
  auto dump = [&](const ScalingFit& fit, const std::string& kind, double s, double p) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_s%g_p%g.csv", kind.c_str(), s, p);
    std::ofstream f(fs::path(args.out) / name);
    f << "lambda,value,model\n";
    for (size_t i = 0; i < fit.lambdas.size(); ++i) {
      const double model =
          std::pow(10.0, fit.intercept + fit.slope * std::log10(fit.lambdas[i]));
      f << fmt17(fit.lambdas[i]) << ',' << fmt17(fit.values[i]) << ',' << fmt17(model)
        << '\n';
    }
    summary << kind << ',' << fmt17(s) << ',' << fmt17(p) << ',' << fmt17(fit.slope) << ','
            << fmt17(fit.theoretical_slope) << ',' << fmt17(fit.r_squared) << ','
            << (fit.ok ? 1 : 0) << '\n';
    std::cout << kind << " s=" << s << " p=" << p << ": slope " << fmt(fit.slope)
              << " (theory " << fmt(fit.theoretical_slope) << "), R^2 "
              << fmt(fit.r_squared) << "\n";
  };

  if (cfg.has("scaling", "weight_pairs") || !cfg.has("scaling", "error_p")) {
    std::vector<std::pair<int, double>> pairs = {{0, 1.0}, {2, 1.0}, {0, 2.0}, {1, 1.5}};
    if (cfg.has("scaling", "weight_pairs")) {
      pairs.clear();
      std::stringstream ss(cfg.str("scaling", "weight_pairs", ""));
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
          throw std::runtime_error("config: weight_pairs entries must be s:p");
        pairs.emplace_back(std::stoi(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
      }
    }
    for (const auto& [s, p] : pairs)
      dump(weight_norm_scaling(s, p, lambdas, b_rule), "weight", s, p);
  }
  if (cfg.has("scaling", "error_p")) {
    for (double p : cfg.list("scaling", "error_p", {1.0}))
      dump(error_norm_scaling(p, ps.V, lambdas, b_rule), "error", 0, p);
  }
  return 0;
}

int cmd_fit(const CommonArgs& args, const Config& cfg) {
  cfg.validate({{"potential", kPotentialKeys}, {"fit", {"field", "lambda"}}});
  const PotentialSetup ps = build_potential(cfg);
  if (!cfg.has("fit", "field") || !cfg.has("fit", "lambda"))
    throw std::runtime_error("config: [fit] needs field=<path base> and lambda=<value>");
  const DiskField v = read_field(cfg.str("fit", "field", ""));
  const double lam = cfg.num("fit", "lambda", 0.0);
  write_manifest(args, cfg, "fit", {});

  const BubbleFit fit = bubble_fit(v, lam, ps.V);
  const double ind = simple_blowup_indicator(v, lam);
  std::ostringstream out;
  out << "tau=" << fmt17(fit.tau) << "\n"
      << "b1=" << fmt17(fit.b.real()) << "\n"
      << "b2=" << fmt17(fit.b.imag()) << "\n"
      << "beta1=" << fmt17(fit.beta(0)) << "\n"
      << "beta2=" << fmt17(fit.beta(1)) << "\n"
      << "sup_err=" << fmt17(fit.sup_err) << "\n"
      << "indicator=" << fmt17(ind) << "\n";
  std::cout << out.str();
  std::ofstream(fs::path(args.out) / "fit.txt") << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the singular Liouville problem on the unit disk"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string command;
  for (const char* name :
       {"classify", "continue", "solve", "audit", "integrals", "scaling", "fit"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config_path)->required();
    sub->add_option("--out", args.out);
    sub->add_option("--seed", args.seed);
    sub->add_option("--threads", args.threads);
    sub->callback([&command, name]() { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const Config cfg = Config::load(args.config_path);
    fs::create_directories(args.out);
    if (command == "classify") return cmd_classify(args, cfg);
    if (command == "continue") return cmd_continue(args, cfg);
    if (command == "solve") return cmd_solve(args, cfg);
    if (command == "audit") return cmd_audit(args, cfg);
    if (command == "integrals") return cmd_integrals(args, cfg);
    if (command == "scaling") return cmd_scaling(args, cfg);
    if (command == "fit") return cmd_fit(args, cfg);
    std::cerr << "unknown command\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    if (what.rfind("config:", 0) == 0) return 3;
    return 2;
  }
}
