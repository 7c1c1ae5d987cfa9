// Machine checks of the two-point decay bound and the maximum principle over
// eigenpairs and vertex pairs, with tightness statistics.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "agmon/metric.hpp"

namespace agmon {

// Bound comparison tolerances: holds iff lhs <= rhs*(1 + kBoundRelTol) + kBoundAbsTol.
inline constexpr double kBoundRelTol = 1e-9;
inline constexpr double kBoundAbsTol = 1e-12;
// |lhs - rhs| <= kExactTol counts as an exactly attained bound.
inline constexpr double kExactTol = 1e-12;

struct BoundCheck {
  int eigen_index = -1;
  int u = -1, v = -1;
  double lhs = 0.0;        // min(|phi(u)|, |phi(v)|)
  double rho_value = 0.0;  // extended real
  double rhs = 0.0;        // sup_V |phi| * exp(-rho)
  double ratio = 0.0;      // lhs/rhs; 0 when rhs = 0 and lhs <= kBoundAbsTol, else +inf
  bool holds = true;
};

struct EigenpairSummary {
  int index = -1;
  double energy = 0.0;
  int violations = 0;
  double max_ratio = 0.0;  // over all ordered pairs
  std::optional<double> min_ratio_decaying;  // over pairs with finite rho > 0
  bool max_principle_holds = false;
};

struct TightnessSummary {
  std::size_t decaying_pairs = 0;  // checks with finite rho > 0
  std::size_t exact_matches = 0;   // |lhs - rhs| <= kExactTol among those
  double median = 0.0, p90 = 0.0, max = 0.0;  // meaningful when decaying_pairs > 0
  bool no_decaying_pairs = true;
};

struct BoundReport {
  std::string problem;
  Mode mode = Mode::literal;
  std::vector<EigenpairSummary> eigenpairs;
  std::vector<BoundCheck> violations;  // sorted by (eigen_index, u, v)
  TightnessSummary tightness;
  bool all_max_principle_hold = true;
  int total_violations = 0;
  // ratios of all decaying checks in (eigen_index, u, v) order; in-memory
  // only (not serialized), used for pooling across sweep trials
  std::vector<double> decaying_ratios;
};

// Shared core: lhs/rho/sup -> populated check (indices left to the caller).
BoundCheck evaluate_bound(double lhs, double rho_value, double sup_norm);

BoundCheck check_bound(const Problem& p, const Eigenpair& e, int u, int v, Mode mode);

// Eigendecomposes H, rebuilds the field and distance matrix per eigenpair,
// checks all n^2 ordered pairs and the maximum principle. Deterministic.
BoundReport verify_problem(const Problem& p, double tol, Mode mode);

struct ReductionRecord {
  int u = -1;      // forbidden vertex
  int vstar = -1;  // argmax of |phi| over the allowed region (smallest index on ties)
  double lhs = 0.0;
  double rho_value = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// One-point decay estimate: for each u in F_V compare |phi(u)| against
// sup|phi| * exp(-rho(u, v*)). Empty when the forbidden region is empty.
std::vector<ReductionRecord> reduction_check(const Problem& p, const Eigenpair& e, Mode mode);

// Quantiles (nearest-rank) of ratio restricted to finite positive rho; throws
// empty_input for an empty check sequence.
TightnessSummary tightness_stats(const std::vector<BoundCheck>& checks);

}  // namespace agmon
