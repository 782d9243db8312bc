#include "liouville/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "liouville/asymptotics.hpp"
#include "liouville/bubble.hpp"
#include "liouville/green.hpp"
#include "liouville/reduction.hpp"

namespace liouville {

double auto_cluster(double lambda_min) {
  return std::clamp(3.0 * std::pow(lambda_min, 0.25), 0.05, 1.0);
}

bool grid_underresolves(const DiskGrid& grid, double lambda_min) {
  const int M = grid.n_r();
  const double spacing = grid.radii()(M - 2) - grid.radii()(M - 1);
  return std::pow(lambda_min, 0.25) < 4.0 * spacing;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Per-grid cached spectral operators and per-(grid, V, lambda) node tables.
struct Workspace {
  std::shared_ptr<const DiskGrid> grid;
  int M, n, nh;
  std::vector<MatrixXd> lap;       // full per-mode polar Laplacian
  DiskPoisson poisson;
  MatrixXd vmat;                   // V at the nodes
  MatrixXd r2mat;                  // |x|^2 at the nodes

  Workspace(std::shared_ptr<const DiskGrid> g, const Potential& V)
      : grid(std::move(g)),
        M(grid->n_r()),
        n(grid->n_theta()),
        nh(grid->n_theta() / 2),
        poisson(grid) {
    lap.reserve(nh + 1);
    for (int m = 0; m <= nh; ++m) lap.push_back(grid->mode_laplacian(m));
    vmat.resize(M, n);
    r2mat.resize(M, n);
    for (int j = 0; j < M; ++j)
      for (int i = 0; i < n; ++i) {
        const Point2 x = grid->node(j, i);
        vmat(j, i) = V(x);
        r2mat(j, i) = x.squaredNorm();
      }
  }

  long dofs() const { return long(M - 1) * n; }

  VectorXd to_vec(const MatrixXd& field_vals) const {
    VectorXd x(dofs());
    for (int j = 1; j < M; ++j)
      for (int i = 0; i < n; ++i) x((j - 1) * n + i) = field_vals(j, i);
    return x;
  }

  MatrixXd to_field(const VectorXd& x) const {
    MatrixXd vals = MatrixXd::Zero(M, n);
    for (int j = 1; j < M; ++j)
      for (int i = 0; i < n; ++i) vals(j, i) = x((j - 1) * n + i);
    return vals;
  }

  MatrixXd apply_laplacian(const MatrixXd& vals) const {
    DiskField f(grid);
    f.values = vals;
    FieldModes modes = to_modes(f);
    for (int m = 0; m <= nh; ++m) {
      Eigen::VectorXcd col = modes.col(m);
      modes.col(m).real() = lap[m] * col.real();
      modes.col(m).imag() = lap[m] * col.imag();
    }
    return from_modes(grid, modes).values;
  }

  // lambda |x|^2 V e^{v}
  MatrixXd source_weight(double lam, const MatrixXd& v) const {
    return (lam * r2mat.array() * vmat.array() * v.array().exp()).matrix();
  }
};

// (-Delta - diag(wbar(r))) per angular mode, interior block; this is the
// angular mean of the Newton linearization and captures its near-kernel.
struct ModePreconditioner {
  const Workspace& ws;
  std::vector<Eigen::PartialPivLU<MatrixXd>> lu;
  std::vector<MatrixXd> mat;

  ModePreconditioner(const Workspace& w, const MatrixXd& weight) : ws(w) {
    const int M = ws.M;
    VectorXd wbar = weight.rowwise().mean();
    lu.reserve(ws.nh + 1);
    mat.reserve(ws.nh + 1);
    for (int m = 0; m <= ws.nh; ++m) {
      MatrixXd B = (-ws.lap[m] -
                    MatrixXd(wbar.asDiagonal()))
                       .block(1, 1, M - 1, M - 1);
      mat.push_back(B);
      lu.emplace_back(B);
    }
  }

  VectorXd apply(const VectorXd& x) const {
    DiskField f(ws.grid);
    f.values = ws.to_field(x);
    FieldModes modes = to_modes(f);
    const int M = ws.M;
    for (int m = 0; m <= ws.nh; ++m) {
      Eigen::VectorXcd col = modes.col(m);
      modes.col(m).setZero();
      modes.col(m).tail(M - 1).real() = lu[m].solve(col.tail(M - 1).real().eval());
      modes.col(m).tail(M - 1).imag() = lu[m].solve(col.tail(M - 1).imag().eval());
    }
    return ws.to_vec(from_modes(ws.grid, modes).values);
  }

  // Smallest |eigenvalue| across the mode blocks, by inverse power iteration.
  double min_eigenvalue_estimate() const {
    double best = std::numeric_limits<double>::infinity();
    for (size_t m = 0; m < lu.size(); ++m) {
      VectorXd v = VectorXd::Ones(mat[m].rows()).normalized();
      double mu = 0.0;
      for (int it = 0; it < 8; ++it) {
        VectorXd z = lu[m].solve(v);
        const double nz = z.norm();
        if (!(nz > 0.0) || !std::isfinite(nz)) break;
        v = z / nz;
        mu = v.dot(mat[m] * v);
      }
      best = std::min(best, std::abs(mu));
    }
    return best;
  }
};

// Left-preconditioned restarted GMRES with modified Gram-Schmidt.
struct GmresStats {
  int iterations = 0;
  bool converged = false;
};

template <class Op, class Prec>
GmresStats gmres(const Op& A, const Prec& P, const VectorXd& b, VectorXd& x,
                 double tol, int restart, int max_restarts) {
  GmresStats stats;
  const long n = b.size();
  if (x.size() != n) x = VectorXd::Zero(n);
  const double bnorm = P(b).norm();
  if (bnorm == 0.0) {
    x.setZero();
    stats.converged = true;
    return stats;
  }
  for (int cycle = 0; cycle < max_restarts; ++cycle) {
    VectorXd r = P(b - A(x));
    double beta = r.norm();
    if (beta <= tol * bnorm) {
      stats.converged = true;
      return stats;
    }
    std::vector<VectorXd> basis;
    basis.reserve(restart + 1);
    basis.push_back(r / beta);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(restart + 1, restart);
    VectorXd cs = VectorXd::Zero(restart), sn = VectorXd::Zero(restart);
    VectorXd g = VectorXd::Zero(restart + 1);
    g(0) = beta;
    int k = 0;
    for (; k < restart; ++k) {
      VectorXd w = P(A(basis[k]));
      for (int i = 0; i <= k; ++i) {
        H(i, k) = w.dot(basis[i]);
        w -= H(i, k) * basis[i];
      }
      H(k + 1, k) = w.norm();
      if (H(k + 1, k) > 1e-300) basis.push_back(w / H(k + 1, k));
      // apply stored Givens rotations
      for (int i = 0; i < k; ++i) {
        const double t = cs(i) * H(i, k) + sn(i) * H(i + 1, k);
        H(i + 1, k) = -sn(i) * H(i, k) + cs(i) * H(i + 1, k);
        H(i, k) = t;
      }
      const double denom = std::hypot(H(k, k), H(k + 1, k));
      cs(k) = H(k, k) / denom;
      sn(k) = H(k + 1, k) / denom;
      H(k, k) = denom;
      H(k + 1, k) = 0.0;
      g(k + 1) = -sn(k) * g(k);
      g(k) = cs(k) * g(k);
      ++stats.iterations;
      if (std::abs(g(k + 1)) <= tol * bnorm || H.rows() == 0) {
        ++k;
        break;
      }
      if (int(basis.size()) == k + 1) {
        ++k;
        break;  // lucky breakdown
      }
    }
    // back substitution on the k x k triangular system
    VectorXd y = VectorXd::Zero(k);
    for (int i = k - 1; i >= 0; --i) {
      double s = g(i);
      for (int j = i + 1; j < k; ++j) s -= H(i, j) * y(j);
      y(i) = s / H(i, i);
    }
    for (int i = 0; i < k; ++i) x += y(i) * basis[i];
    if (std::abs(g(k)) <= tol * bnorm) {
      stats.converged = true;
      return stats;
    }
  }
  return stats;
}

MatrixXd residual_field(const Workspace& ws, double lam, const MatrixXd& v) {
  return -ws.apply_laplacian(v) - ws.source_weight(lam, v);
}

double scaled_residual_norm(const Workspace& ws, const MatrixXd& res, const MatrixXd& w) {
  double rmax = 0.0;
  for (int j = 1; j < ws.M; ++j) rmax = std::max(rmax, res.row(j).cwiseAbs().maxCoeff());
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  return rmax / scale;
}

SolveResult newton_solve_impl(Workspace& ws, double lam, const DiskField& initial,
                              const SolverConfig& cfg) {
  SolveResult out;
  out.lambda = lam;
  MatrixXd v = initial.values;
  v.row(0).setZero();  // homogeneous boundary data

  MatrixXd w = ws.source_weight(lam, v);
  MatrixXd res = residual_field(ws, lam, v);
  double rn = scaled_residual_norm(ws, res, w);
  out.residual_history.push_back(rn);

  std::unique_ptr<ModePreconditioner> prec;
  int it = 0;
  for (; it < cfg.max_iterations && rn > cfg.newton_tol; ++it) {
    prec = std::make_unique<ModePreconditioner>(ws, w);
    auto op = [&](const VectorXd& x) {
      const MatrixXd f = ws.to_field(x);
      return ws.to_vec((-ws.apply_laplacian(f).array() - w.array() * f.array()).matrix());
    };
    auto pr = [&](const VectorXd& x) { return prec->apply(x); };
    VectorXd rhs = ws.to_vec((-res).eval());
    VectorXd delta = VectorXd::Zero(ws.dofs());
    gmres(op, pr, rhs, delta, cfg.gmres_tol, cfg.gmres_restart, cfg.gmres_max_restarts);

    double step = 1.0;
    MatrixXd v_try, w_try, res_try;
    double rn_try = std::numeric_limits<double>::infinity();
    for (int h = 0; h <= cfg.max_halvings; ++h) {
      v_try = v + step * ws.to_field(delta);
      w_try = ws.source_weight(lam, v_try);
      if (w_try.allFinite()) {
        res_try = residual_field(ws, lam, v_try);
        rn_try = scaled_residual_norm(ws, res_try, w_try);
        if (rn_try < rn) break;
      }
      step *= 0.5;
    }
    v = v_try;
    w = w_try;
    res = res_try;
    rn = rn_try;
    out.residual_history.push_back(rn);
  }

  out.newton_iterations = it;
  out.final_residual_norm = rn;
  out.converged = rn <= cfg.newton_tol;
  if (!prec) prec = std::make_unique<ModePreconditioner>(ws, w);
  out.min_eigenvalue_estimate = prec->min_eigenvalue_estimate();
  out.near_singular_warning = out.min_eigenvalue_estimate < cfg.near_singular_threshold;
  out.field = DiskField(ws.grid);
  out.field.values = v;
  return out;
}

struct BorderedOperator {
  const Workspace& ws;
  const MatrixXd& weight;      // lambda V |x|^2 e^{PW}
  VectorXd zhat[2];            // normalized kernel columns
  VectorXd chat[2];            // normalized constraint rows
  double zscale[2];            // ||zeta_j||_2

  long dofs() const { return ws.dofs() + 2; }

  VectorXd apply(const VectorXd& y) const {
    const long nf = ws.dofs();
    const VectorXd x = y.head(nf);
    const MatrixXd f = ws.to_field(x);
    MatrixXd af = (-ws.apply_laplacian(f).array() - weight.array() * f.array()).matrix();
    VectorXd outf = ws.to_vec(af);
    outf -= y(nf) * zhat[0] + y(nf + 1) * zhat[1];
    VectorXd out(nf + 2);
    out.head(nf) = outf;
    out(nf) = chat[0].dot(x);
    out(nf + 1) = chat[1].dot(x);
    return out;
  }
};

struct BorderedPreconditioner {
  const ModePreconditioner& prec;
  const BorderedOperator& bop;
  VectorXd u[2];
  Eigen::Matrix2d S;

  BorderedPreconditioner(const ModePreconditioner& p, const BorderedOperator& b)
      : prec(p), bop(b) {
    for (int j = 0; j < 2; ++j) u[j] = prec.apply(bop.zhat[j]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) S(i, j) = bop.chat[i].dot(u[j]);
  }

  VectorXd apply(const VectorXd& y) const {
    const long nf = bop.ws.dofs();
    const VectorXd u0 = prec.apply(y.head(nf));
    Eigen::Vector2d rhs(bop.chat[0].dot(u0) - y(nf), bop.chat[1].dot(u0) - y(nf + 1));
    // P phi - sum a_j zhat_j = f, <chat_i, phi> = g  (computed via Keller
    // block elimination on the mode-mean operator)
    const Eigen::Vector2d a = S.fullPivLu().solve(rhs);
    VectorXd out(nf + 2);
    out.head(nf) = u0 - a(0) * u[0] - a(1) * u[1];
    out(nf) = -a(0);
    out(nf + 1) = -a(1);
    return out;
  }
};

BorderedResult bordered_solve_impl(Workspace& ws, double lam, const Complex& b,
                                   const SolverConfig& cfg) {
  if (std::abs(b) > cfg.m_box * std::sqrt(lam))
    throw std::invalid_argument("bordered_solve: b outside the m_box sqrt(lambda) region");

  const int M = ws.M, n = ws.n;
  // bubble weight |x|^2 e^W, its exact projection, and the frozen coefficient
  MatrixXd wbub(M, n);
  MatrixXd z1(M, n), z2(M, n);
  for (int j = 0; j < M; ++j)
    for (int i = 0; i < n; ++i) {
      const Point2 x = ws.grid->node(j, i);
      wbub(j, i) = weight_exp_w(lam, b, x);
      z1(j, i) = kernel_z(1, lam, b, x);
      z2(j, i) = kernel_z(2, lam, b, x);
    }
  DiskField wb_field(ws.grid);
  wb_field.values = wbub;
  DiskField pw = ws.poisson.solve(wb_field);
  const MatrixXd weight =
      (lam * ws.r2mat.array() * ws.vmat.array() * pw.values.array().exp()).matrix();
  const MatrixXd R = wbub - weight;

  BorderedOperator bop{ws, weight, {}, {}, {}};
  const MatrixXd zeta1 = (z1.array() * wbub.array()).matrix();
  const MatrixXd zeta2 = (z2.array() * wbub.array()).matrix();
  bop.zhat[0] = ws.to_vec(zeta1);
  bop.zhat[1] = ws.to_vec(zeta2);
  for (int j = 0; j < 2; ++j) {
    bop.zscale[j] = bop.zhat[j].norm();
    bop.zhat[j] /= bop.zscale[j];
  }
  // <grad phi, grad PZ^j> = integral of phi * zeta_j over the disk
  const Eigen::VectorXd& wr = ws.grid->radial_area_weights();
  const double wa = ws.grid->angular_weight();
  MatrixXd qw(M, n);
  for (int j = 0; j < M; ++j) qw.row(j).setConstant(wa * wr(j));
  bop.chat[0] = ws.to_vec((qw.array() * zeta1.array()).matrix());
  bop.chat[1] = ws.to_vec((qw.array() * zeta2.array()).matrix());
  for (int j = 0; j < 2; ++j) bop.chat[j].normalize();

  ModePreconditioner prec(ws, weight);
  BorderedPreconditioner bprec(prec, bop);

  auto opfun = [&](const VectorXd& y) { return bop.apply(y); };
  auto prfun = [&](const VectorXd& y) { return bprec.apply(y); };

  BorderedResult out;
  out.projected_bubble = pw;
  MatrixXd phi = MatrixXd::Zero(M, n);
  VectorXd y = VectorXd::Zero(ws.dofs() + 2);
  int it = 0;
  for (; it < cfg.inner_max_iterations; ++it) {
    const MatrixXd nl =
        (weight.array() * (phi.array().exp() - 1.0 - phi.array())).matrix();
    const MatrixXd rhs_field = -R + nl;
    VectorXd rhs(ws.dofs() + 2);
    rhs.head(ws.dofs()) = ws.to_vec(rhs_field);
    rhs(ws.dofs()) = 0.0;
    rhs(ws.dofs() + 1) = 0.0;
    gmres(opfun, prfun, rhs, y, cfg.gmres_tol, cfg.gmres_restart, cfg.gmres_max_restarts);
    const MatrixXd phi_new = ws.to_field(y.head(ws.dofs()));
    DiskField upd(ws.grid);
    upd.values = phi_new - phi;
    out.update_norm = h1_norm(upd);
    phi = phi_new;
    if (phi.cwiseAbs().maxCoeff() > 2.0)
      throw std::runtime_error("bordered_solve: inner iteration divergence");
    if (out.update_norm <= cfg.inner_update_tol) {
      ++it;
      break;
    }
  }
  out.iterations = it;
  // operator carried -sum a_j zhat_j on the left; flip back to the multiplier
  // convention of the inner problem's right hand side
  out.c1 = y(ws.dofs()) / bop.zscale[0];
  out.c2 = y(ws.dofs() + 1) / bop.zscale[1];
  out.phi = DiskField(ws.grid);
  out.phi.values = phi;
  return out;
}

}  // namespace

SolveResult newton_solve(double lam, const Potential& V, const DiskField& initial,
                         const SolverConfig& cfg) {
  Workspace ws(initial.grid, V);
  return newton_solve_impl(ws, lam, initial, cfg);
}

BorderedResult bordered_solve(double lam, const Potential& V, const Complex& b,
                              const std::shared_ptr<const DiskGrid>& grid,
                              const SolverConfig& cfg) {
  Workspace ws(grid, V);
  return bordered_solve_impl(ws, lam, b, cfg);
}

namespace {

std::pair<Complex, BorderedResult> outer_reduction_impl(Workspace& ws, double lam,
                                                        const Potential& V,
                                                        const SolverConfig& cfg,
                                                        std::optional<Complex> initial_b) {
  const Classification cls = classify(V);
  if (!cls.exists || std::abs(cls.ratio) >= 1.0)
    throw std::domain_error(
        "outer_reduction: classification excludes a blow-up family (det D2V(0) <= 0)");

  Complex b = initial_b.value_or(predict_b(lam, V.gamma1(), V.gamma2()));
  const double target = cfg.outer_c_tol * std::sqrt(lam);
  const double fd = 1e-4 * std::sqrt(lam / 32.0);

  auto eval_c = [&](const Complex& bb) {
    BorderedResult r = bordered_solve_impl(ws, lam, bb, cfg);
    return std::make_pair(Eigen::Vector2d(r.c1, r.c2), std::move(r));
  };

  auto [c, inner] = eval_c(b);
  for (int it = 0; it < cfg.outer_max_iterations; ++it) {
    if (c.norm() <= target) return {b, std::move(inner)};
    // forward-difference Jacobian of c(b)
    Eigen::Matrix2d Jc;
    {
      auto [cr, r1] = eval_c(b + Complex(fd, 0.0));
      auto [ci, r2] = eval_c(b + Complex(0.0, fd));
      Jc.col(0) = (cr - c) / fd;
      Jc.col(1) = (ci - c) / fd;
    }
    const Eigen::Vector2d step = Jc.fullPivLu().solve(-c);
    double damp = 1.0;
    bool accepted = false;
    for (int h = 0; h < 8; ++h) {
      const Complex b_try = b + damp * Complex(step(0), step(1));
      if (std::abs(b_try) <= cfg.m_box * std::sqrt(lam)) {
        auto [c_try, inner_try] = eval_c(b_try);
        if (c_try.norm() < c.norm() || c_try.norm() <= target) {
          b = b_try;
          c = c_try;
          inner = std::move(inner_try);
          accepted = true;
          break;
        }
      }
      damp *= 0.5;
    }
    if (!accepted) break;
  }
  if (c.norm() <= target) return {b, std::move(inner)};

  // diagnostic sample of the multiplier field on a b-grid
  std::ostringstream msg;
  msg << "outer_reduction: root find failed at lambda=" << lam << "; |c|=" << c.norm()
      << "; c-field samples:";
  const double h = std::sqrt(lam / 32.0);
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) {
      const Complex bb = b + Complex(di * h, dj * h);
      if (std::abs(bb) > cfg.m_box * std::sqrt(lam)) continue;
      auto [cs, rr] = eval_c(bb);
      msg << " c(" << bb.real() << "," << bb.imag() << ")=(" << cs(0) << "," << cs(1)
          << ")";
    }
  throw std::runtime_error(msg.str());
}

}  // namespace

std::pair<Complex, BorderedResult> outer_reduction(
    double lam, const Potential& V, const std::shared_ptr<const DiskGrid>& grid,
    const SolverConfig& cfg, std::optional<Complex> initial_b) {
  Workspace ws(grid, V);
  return outer_reduction_impl(ws, lam, V, cfg, initial_b);
}

std::vector<SolveResult> continuation_run(const Potential& V, const SolverConfig& cfg) {
  const double cluster = cfg.cluster > 0.0 ? cfg.cluster : auto_cluster(cfg.lambda_end);
  auto grid = make_grid(cfg.n_r, cfg.n_theta, cluster);
  Workspace ws(grid, V);

  std::vector<SolveResult> branch;
  double ratio = cfg.lambda_ratio;
  int refinements = 0;
  double lam = cfg.lambda_start;
  std::optional<Complex> b_prev;
  double lam_prev = lam;

  while (true) {
    bool ok = false;
    std::string what;
    try {
      std::optional<Complex> b_init;
      if (b_prev)
        b_init = *b_prev * std::sqrt(lam / lam_prev);  // b scales like sqrt(lambda)
      auto [b, inner] = outer_reduction_impl(ws, lam, V, cfg, b_init);
      DiskField init(grid);
      init.values = inner.projected_bubble.values + inner.phi.values;
      SolveResult res = newton_solve_impl(ws, lam, init, cfg);
      if (!res.converged) throw std::runtime_error("newton polish did not converge");
      res.b_used = b;
      res.c1 = inner.c1;
      res.c2 = inner.c2;
      const BubbleFit fit = bubble_fit(res.field, lam, V);
      res.tau_fit = fit.tau;
      res.b_fit = fit.b;
      res.fit_sup_err = fit.sup_err;
      branch.push_back(std::move(res));
      b_prev = b;
      lam_prev = lam;
      ok = true;
    } catch (const std::exception& e) {
      what = e.what();
      ok = false;
    }
    if (!ok) {
      if (refinements >= 3)
        break;  // abort with partial results
      ++refinements;
      ratio = std::sqrt(ratio);
      lam = lam_prev * ratio;
      continue;
    }
    if (lam <= cfg.lambda_end * (1.0 + 1e-12)) break;
    lam = std::max(lam * ratio, cfg.lambda_end);
  }
  return branch;
}

}  // namespace liouville
