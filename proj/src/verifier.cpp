#include "agmon/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace agmon {

BoundCheck evaluate_bound(double lhs, double rho_value, double sup_norm) {
  BoundCheck c;
  c.lhs = lhs;
  c.rho_value = rho_value;
  c.rhs = sup_norm * std::exp(-rho_value);  // exp(-inf) = 0
  c.holds = lhs <= c.rhs * (1.0 + kBoundRelTol) + kBoundAbsTol;
  if (c.rhs > 0.0)
    c.ratio = lhs / c.rhs;
  else
    c.ratio = (lhs <= kBoundAbsTol) ? 0.0 : kInf;
  return c;
}

BoundCheck check_bound(const Problem& p, const Eigenpair& e, int u, int v, Mode mode) {
  const auto f = agmon_field(p, e.energy);
  double sup = 0.0;
  for (double x : e.vector) sup = std::max(sup, std::abs(x));
  const double lhs = std::min(std::abs(e.vector.at(u)), std::abs(e.vector.at(v)));
  BoundCheck c = evaluate_bound(lhs, rho(f, u, v, mode).value, sup);
  c.u = u;
  c.v = v;
  return c;
}

BoundReport verify_problem(const Problem& p, double tol, Mode mode) {
  const auto h = assemble_operator(p);
  const auto eigenpairs = eigendecompose(h, tol);
  const int n = p.graph.n;

  BoundReport report;
  report.problem = p.name;
  report.mode = mode;
  std::vector<BoundCheck> all_checks;
  all_checks.reserve(static_cast<std::size_t>(n) * n * eigenpairs.size());

  for (std::size_t k = 0; k < eigenpairs.size(); ++k) {
    const Eigenpair& e = eigenpairs[k];
    const auto f = agmon_field(p, e.energy);
    const auto m = rho_matrix(f, mode);
    double sup = 0.0;
    for (double x : e.vector) sup = std::max(sup, std::abs(x));

    EigenpairSummary s;
    s.index = static_cast<int>(k);
    s.energy = e.energy;
    const auto mp = max_principle_check(p, e);
    s.max_principle_holds = mp.holds;
    if (!mp.holds) report.all_max_principle_hold = false;

    for (int u = 0; u < n; ++u) {
      const double au = std::abs(e.vector[u]);
      for (int v = 0; v < n; ++v) {
        BoundCheck c = evaluate_bound(std::min(au, std::abs(e.vector[v])), m.at(u, v), sup);
        c.eigen_index = static_cast<int>(k);
        c.u = u;
        c.v = v;
        if (!c.holds) {
          ++s.violations;
          report.violations.push_back(c);
        }
        s.max_ratio = std::max(s.max_ratio, c.ratio);
        if (std::isfinite(c.rho_value) && c.rho_value > 0.0) {
          if (!s.min_ratio_decaying || c.ratio < *s.min_ratio_decaying)
            s.min_ratio_decaying = c.ratio;
          report.decaying_ratios.push_back(c.ratio);
        }
        all_checks.push_back(c);
      }
    }
    report.eigenpairs.push_back(s);
  }
  report.total_violations = static_cast<int>(report.violations.size());
  report.tightness = tightness_stats(all_checks);
  return report;
}

std::vector<ReductionRecord> reduction_check(const Problem& p, const Eigenpair& e, Mode mode) {
  const auto f = agmon_field(p, e.energy);
  std::vector<ReductionRecord> records;
  if (f.partition.forbidden.empty()) return records;
  if (f.partition.allowed.empty())
    fail(Errc::empty_input, "allowed region empty; not a validated eigenpair");

  double sup = 0.0;
  for (double x : e.vector) sup = std::max(sup, std::abs(x));
  int vstar = f.partition.allowed.front();
  for (int v : f.partition.allowed)
    if (std::abs(e.vector[v]) > std::abs(e.vector[vstar])) vstar = v;

  for (int u : f.partition.forbidden) {
    ReductionRecord r;
    r.u = u;
    r.vstar = vstar;
    r.lhs = std::abs(e.vector[u]);
    r.rho_value = rho(f, u, vstar, mode).value;
    r.rhs = sup * std::exp(-r.rho_value);
    r.holds = r.lhs <= r.rhs * (1.0 + kBoundRelTol) + kBoundAbsTol;
    records.push_back(r);
  }
  return records;
}

namespace {

double nearest_rank(const std::vector<double>& sorted, double percentile) {
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return sorted[rank - 1];
}

}  // namespace

TightnessSummary tightness_stats(const std::vector<BoundCheck>& checks) {
  if (checks.empty()) fail(Errc::empty_input, "no bound checks");
  TightnessSummary t;
  std::vector<double> ratios;
  for (const auto& c : checks) {
    if (!(std::isfinite(c.rho_value) && c.rho_value > 0.0)) continue;
    ratios.push_back(c.ratio);
    if (std::abs(c.lhs - c.rhs) <= kExactTol) ++t.exact_matches;
  }
  t.decaying_pairs = ratios.size();
  t.no_decaying_pairs = ratios.empty();
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    t.median = nearest_rank(ratios, 50.0);
    t.p90 = nearest_rank(ratios, 90.0);
    t.max = ratios.back();
  }
  return t;
}

}  // namespace agmon
