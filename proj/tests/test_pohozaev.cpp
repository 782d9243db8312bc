#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "liouville/green.hpp"
#include "liouville/pohozaev.hpp"
#include "liouville/reduction.hpp"
#include "liouville/solver.hpp"

using namespace liouville;

namespace {

SolveResult small_solution(const Potential& V, double lam, int n_r = 32, int n_theta = 64) {
  SolverConfig cfg;
  auto grid = make_grid(n_r, n_theta);
  SolveResult res = newton_solve(lam, V, DiskField(grid), cfg);
  REQUIRE(res.converged);
  return res;
}

}  // namespace

TEST_CASE("radial configuration: every identity term vanishes") {
  const Potential V(1.0, 1.0);
  const SolveResult res = small_solution(V, 0.1);
  const PohozaevReport rep = audit(res.field, 0.1, V);
  CHECK(rep.solution_like);
  for (int i = 0; i < 2; ++i) {
    for (const auto& [name, value] : rep.gradient_identity[i].terms)
      CHECK(std::abs(value) <= 1e-9);
    CHECK(std::abs(rep.gradient_identity[i].residual) <= 1e-9);
  }
  CHECK(std::abs(rep.diff_identity.residual) <= 1e-9);
  CHECK(std::abs(rep.cross_identity.residual) <= 1e-9);
  CHECK(rep.identities_pass);

  // no concentration on the small branch
  CHECK(rep.mass < 0.25 * 16.0 * kPi);
  CHECK(std::abs(rep.m1) <= 1e-6);
  CHECK(std::abs(rep.m2) <= 1e-6);
}

TEST_CASE("asymmetric potential exercises the gradient identity") {
  // cubic term breaks the x -> -x symmetry, so the origin gradient and the
  // x_i-weighted boundary terms are genuinely nonzero
  const Potential V(1.0, 2.0, {{3, 0, 0.4}});
  SolverConfig cfg;
  auto grid = make_grid(48, 64);
  const SolveResult res = newton_solve(0.08, V, DiskField(grid), cfg);
  REQUIRE(res.converged);
  const PohozaevReport rep = audit(res.field, 0.08, V);
  CHECK(rep.solution_like);
  bool nontrivial = false;
  for (const auto& [name, value] : rep.gradient_identity[0].terms)
    nontrivial = nontrivial || std::abs(value) > 1e-6;
  CHECK(nontrivial);
  CHECK(std::abs(rep.gradient_identity[0].residual) <= 1e-6);
  CHECK(std::abs(rep.gradient_identity[1].residual) <= 1e-6);
  CHECK(std::abs(rep.diff_identity.residual) <= 1e-6);
  CHECK(std::abs(rep.cross_identity.residual) <= 1e-6);
}

TEST_CASE("blow-up solution passes the audit") {
  const double lam = 1e-2;
  const Potential V(1.0, 2.0);
  SolverConfig cfg;
  cfg.n_r = 96;
  cfg.n_theta = 64;
  cfg.lambda_start = lam;
  cfg.lambda_end = lam;
  const std::vector<SolveResult> branch = continuation_run(V, cfg);
  REQUIRE(branch.size() == 1);
  const PohozaevReport rep = audit(branch[0].field, lam, V);
  CHECK(rep.solution_like);
  CHECK(std::abs(rep.gradient_identity[0].residual) <= 1e-6);
  CHECK(std::abs(rep.gradient_identity[1].residual) <= 1e-6);
  CHECK(std::abs(rep.diff_identity.residual) <= 1e-6);
  CHECK(std::abs(rep.cross_identity.residual) <= 1e-6);
  CHECK(rep.identities_pass);
}

TEST_CASE("negative control: a non-solution is flagged") {
  const Potential V(1.0, 2.0);
  auto grid = make_grid(32, 64);
  DiskField fake = sample(grid, [](const Point2& x) { return 1.0 - x.squaredNorm(); });
  const PohozaevReport rep = audit(fake, 0.1, V);
  CHECK(!rep.solution_like);
  CHECK(!rep.identities_pass);
  CHECK(rep.equation_residual > 1e-1);
  // residual of the gradient identity is O(1)-scale garbage, not small
  const double worst = std::max({std::abs(rep.gradient_identity[0].residual),
                                 std::abs(rep.gradient_identity[1].residual),
                                 std::abs(rep.diff_identity.residual),
                                 std::abs(rep.cross_identity.residual)});
  CHECK(worst > 1e-3);
}

TEST_CASE("audit residuals shrink under grid refinement") {
  const double lam = 5e-3;
  const Potential V(1.0, 2.0);
  auto run = [&](int n_r, int n_theta) {
    SolverConfig cfg;
    cfg.n_r = n_r;
    cfg.n_theta = n_theta;
    cfg.lambda_start = lam;
    cfg.lambda_end = lam;
    cfg.cluster = 0.4;
    const std::vector<SolveResult> branch = continuation_run(V, cfg);
    REQUIRE(branch.size() == 1);
    const PohozaevReport rep = audit(branch[0].field, lam, V);
    return std::max({std::abs(rep.gradient_identity[0].residual),
                     std::abs(rep.gradient_identity[1].residual),
                     std::abs(rep.diff_identity.residual),
                     std::abs(rep.cross_identity.residual)});
  };
  const double coarse = run(40, 32);
  const double fine = run(80, 64);
  CHECK((coarse / fine >= 4.0 || fine <= 1e-10));
}

TEST_CASE("report serialization") {
  const Potential V(1.0, 1.0);
  const SolveResult res = small_solution(V, 0.1, 32, 64);
  const PohozaevReport rep = audit(res.field, 0.1, V);
  const std::string base =
      (std::filesystem::temp_directory_path() / "liouville_report_test").string();
  write_report(rep, base);
  CHECK(std::filesystem::exists(base + ".txt"));
  CHECK(std::filesystem::exists(base + ".csv"));
  std::filesystem::remove(base + ".txt");
  std::filesystem::remove(base + ".csv");
}
