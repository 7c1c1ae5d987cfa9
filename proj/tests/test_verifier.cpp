#include "agmon/verifier.hpp"

#include <cmath>
#include <tuple>

#include "agmon/emit.hpp"
#include "doctest.h"

using namespace agmon;

namespace {

Problem p3_spiked() {
  return Problem{gen_family(FamilySpec::path(3)), {3.0, 0.0, 0.0}, "p3"};
}

double sup_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

// Independent re-evaluation of one bound check: rho from the brute-force
// oracle, the comparison redone from scratch.
bool bound_holds_oracle(const Problem& p, const Eigenpair& e, int u, int v, Mode mode) {
  auto f = agmon_field(p, e.energy);
  double rho_val;
  if (f.is_allowed(u) && f.is_allowed(v)) {
    rho_val = 0.0;
  } else {
    rho_val = std::min(rho1_oracle(f, u, v, mode, p.graph.n + 3),
                       rho1_oracle(f, v, u, mode, p.graph.n + 3));
  }
  const double lhs = std::min(std::abs(e.vector[u]), std::abs(e.vector[v]));
  const double rhs = sup_norm(e.vector) * std::exp(-rho_val);
  return lhs <= rhs * (1.0 + 1e-9) + 1e-12;
}

}  // namespace

TEST_CASE("check_bound on K2 with zero potential") {
  Problem k2{gen_family(FamilySpec::complete(2)), {0.0, 0.0}, "k2"};
  auto eig = eigendecompose(assemble_operator(k2));
  auto c = check_bound(k2, eig[0], 0, 1, Mode::literal);
  CHECK(c.rho_value == 0.0);
  CHECK(c.holds);
  CHECK(std::abs(c.lhs - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(c.rhs - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(c.ratio - 1.0) < 1e-12);
}

TEST_CASE("check_bound on the spiked path ground state") {
  auto p = p3_spiked();
  auto eig = eigendecompose(assemble_operator(p));
  auto c = check_bound(p, eig[0], 0, 2, Mode::literal);
  CHECK(c.holds);
  CHECK(c.ratio <= 1.0 + 1e-9);
  CHECK(c.ratio > 0.0);
  // rhs recomputed from the oracle distance
  auto f = agmon_field(p, eig[0].energy);
  const double rho_o = std::min(rho1_oracle(f, 0, 2, Mode::literal, 6),
                                rho1_oracle(f, 2, 0, Mode::literal, 6));
  CHECK(std::abs(c.rhs - sup_norm(eig[0].vector) * std::exp(-rho_o)) <= 1e-12);
}

TEST_CASE("check_bound at the argmax diagonal is exactly tight") {
  auto p = p3_spiked();
  for (const auto& e : eigendecompose(assemble_operator(p))) {
    const auto mp = max_principle_check(p, e);
    auto c = check_bound(p, e, mp.argmax_vertex, mp.argmax_vertex, Mode::literal);
    CHECK(c.holds);
    CHECK(c.ratio == 1.0);
    CHECK(c.lhs == c.rhs);
  }
}

// The one-edge-minimum walk convention makes rho(u,u) = 2 w(u) at forbidden
// vertices, which a deg-1 spike eigenpair beats: phi(0) = ||phi|| / ((1+q0)(1-E0))
// on K2 with W = [10, 0], while the bound demands ||phi|| / (1+q0)^2.
// Frozen closed form: E0 = 6 - sqrt(26), violation ratio 5 + sqrt(26).
TEST_CASE("diagonal pairs at one-step-tight spikes exceed the bound") {
  Problem k2{gen_family(FamilySpec::complete(2)), {10.0, 0.0}, "k2-spike"};
  auto eig = eigendecompose(assemble_operator(k2));
  const double e0_exact = 6.0 - std::sqrt(26.0);
  CHECK(std::abs(eig[0].energy - e0_exact) < 1e-12);
  auto c = check_bound(k2, eig[0], 0, 0, Mode::literal);
  CHECK(!c.holds);
  CHECK(std::abs(c.ratio - (5.0 + std::sqrt(26.0))) < 1e-9 * 11.0);
  CHECK(!bound_holds_oracle(k2, eig[0], 0, 0, Mode::literal));
}

TEST_CASE("verify_problem cross-validated against the oracle on the spiked path") {
  auto p = p3_spiked();
  auto report = verify_problem(p, 1e-10, Mode::literal);
  CHECK(report.problem == "p3");
  CHECK(report.all_max_principle_hold);
  REQUIRE(report.eigenpairs.size() == 3);

  // Every reported check agrees with an independent recomputation.
  auto eig = eigendecompose(assemble_operator(p));
  int oracle_violations = 0;
  for (int k = 0; k < 3; ++k)
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v)
        if (!bound_holds_oracle(p, eig[k], u, v, Mode::literal)) ++oracle_violations;
  CHECK(report.total_violations == oracle_violations);

  // The two eigenpairs below the spike violate exactly on the diagonal (0,0).
  CHECK(report.total_violations == 2);
  REQUIRE(report.violations.size() == 2);
  for (const auto& c : report.violations) {
    CHECK(c.u == 0);
    CHECK(c.v == 0);
    CHECK(c.ratio > 1.0 + 1e-9);
  }
  CHECK(report.violations[0].eigen_index == 0);
  CHECK(report.violations[1].eigen_index == 1);
  CHECK(report.eigenpairs[2].violations == 0);  // E2 > max W: no forbidden region
}

TEST_CASE("verify_problem is clean on problems with constant potential") {
  for (auto spec : {FamilySpec::complete(2), FamilySpec::cycle(5), FamilySpec::erdos_renyi(9, 0.4, 3)}) {
    Problem p{gen_family(spec), {}, spec.label()};
    p.potential = const_potential(p.graph.n, 0.0);
    auto report = verify_problem(p, 1e-10, Mode::literal);
    CHECK(report.total_violations == 0);
    CHECK(report.all_max_principle_hold);
    CHECK(report.tightness.no_decaying_pairs);  // A_V = V, rho vanishes
    for (const auto& s : report.eigenpairs) CHECK(s.max_ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("verify_problem reports are byte-deterministic") {
  Problem p{gen_family(FamilySpec::erdos_renyi(8, 0.45, 5)), uniform_potential(8, 0, 5, 6), "det"};
  auto a = report_json(verify_problem(p, 1e-10, Mode::literal));
  auto b = report_json(verify_problem(p, 1e-10, Mode::literal));
  CHECK(a == b);
  // violations sorted by (eigen_index, u, v)
  auto report = verify_problem(p, 1e-10, Mode::literal);
  for (std::size_t i = 1; i < report.violations.size(); ++i) {
    const auto& x = report.violations[i - 1];
    const auto& y = report.violations[i];
    const bool ordered =
        std::tuple<int, int, int>{x.eigen_index, x.u, x.v} < std::tuple<int, int, int>{y.eigen_index, y.u, y.v};
    CHECK(ordered);
  }
}

TEST_CASE("reduction_check") {
  auto p = p3_spiked();
  auto eig = eigendecompose(assemble_operator(p));

  auto ground = reduction_check(p, eig[0], Mode::literal);
  REQUIRE(ground.size() == 1);
  CHECK(ground[0].u == 0);
  CHECK(ground[0].vstar == 2);
  CHECK(ground[0].holds);

  // top eigenpair sits above the spike: empty forbidden region
  CHECK(eig[2].energy > 3.0);
  CHECK(reduction_check(p, eig[2], Mode::literal).empty());

  Problem grid{gen_family(FamilySpec::grid(3, 3)), spike_potential(9, 10.0, 0), "grid"};
  auto geig = eigendecompose(assemble_operator(grid));
  auto records = reduction_check(grid, geig[0], Mode::literal);
  REQUIRE(records.size() == 1);
  for (const auto& r : records) {
    CHECK(r.holds);
    // one-point estimate: rho(u, v*) equals w(u) under the literal definition
    auto f = agmon_field(grid, geig[0].energy);
    CHECK(std::abs(r.rho_value - f.weight[r.u]) <= 1e-12);
  }
}

TEST_CASE("tightness_stats") {
  CHECK_THROWS_AS((void)tightness_stats({}), Error);

  BoundCheck single;
  single.rho_value = 1.0;
  single.ratio = 0.5;
  single.lhs = 0.5;
  single.rhs = 1.0;
  auto t = tightness_stats({single});
  CHECK(t.decaying_pairs == 1);
  CHECK(!t.no_decaying_pairs);
  CHECK(t.median == 0.5);
  CHECK(t.p90 == 0.5);
  CHECK(t.max == 0.5);

  BoundCheck zero_rho;
  zero_rho.rho_value = 0.0;
  zero_rho.ratio = 1.0;
  auto tz = tightness_stats({zero_rho});
  CHECK(tz.no_decaying_pairs);
  CHECK(tz.decaying_pairs == 0);

  BoundCheck exact = single;
  exact.lhs = 0.75;
  exact.rhs = 0.75;
  exact.ratio = 1.0;
  auto te = tightness_stats({single, exact});
  CHECK(te.decaying_pairs == 2);
  CHECK(te.exact_matches == 1);
  CHECK(te.median == 0.5);
  CHECK(te.max == 1.0);
}

TEST_CASE("strict mode reports stay self-consistent") {
  Problem p{gen_family(FamilySpec::erdos_renyi(7, 0.5, 8)), uniform_potential(7, 0, 5, 9), "s"};
  auto lit = verify_problem(p, 1e-10, Mode::literal);
  auto str = verify_problem(p, 1e-10, Mode::strict);
  CHECK(str.mode == Mode::strict);
  // strict rho >= literal rho, so strict violations are at least as frequent
  CHECK(str.total_violations >= lit.total_violations);
}
