// Normalized excess q, node weights w, node-weighted shortest walks, and the
// two-point distances rho1 / rho with a brute-force oracle for testing.
#pragma once

#include <limits>
#include <string>
#include <vector>

#include "agmon/spectral.hpp"

namespace agmon {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// literal: walk interiors unrestricted, the definition exactly as printed.
// strict: every summed walk vertex must lie in the forbidden region (the
// terminal stays unrestricted); infima over the smaller walk set.
enum class Mode { literal, strict };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);  // throws invalid_spec

struct AgmonField {
  Graph graph;  // value copy; fields are freely shareable across threads
  double energy = 0.0;
  std::vector<double> excess;  // q(v) = (W(v) - E)_+ / deg(v)
  std::vector<double> weight;  // w(v) = log1p(q(v))
  RegionPartition partition;
  std::vector<char> allowed_mask;

  bool is_allowed(int v) const { return allowed_mask[static_cast<std::size_t>(v)] != 0; }
};

AgmonField agmon_field(const Problem& p, double energy);

struct NodeDistance {
  std::vector<double> dist;  // D[x] = min over walks source=x1~..~xk=x of sum_{i<k} w(x_i)
  std::vector<int> pred;     // predecessor in the label-setting tree, -1 at source/unreached
};

// Priority-queue label-setting search; the cost of leaving vertex x is w(x).
// In strict mode the search runs on the forbidden-region subgraph.
NodeDistance node_weighted_distance(const AgmonField& f, int source, Mode mode = Mode::literal);

struct DistanceResult {
  double value = kInf;
  // Walk v1 ~ ... ~ v_{l+1}: starts at the searched endpoint, ends at the
  // terminal. Empty for the allowed-pair zero convention and for value = inf.
  std::vector<int> witness;
  Mode mode = Mode::literal;
  // Endpoint whose weight and threshold applied (rho1's second argument);
  // -1 for the allowed-pair zero convention.
  int target = -1;
};

// rho1(u, v) = w(v) + min over terminals t with q(t) >= q(v) and neighbors
// p ~ t of D(u, p) + w(p). Infeasibility (strict mode only) encoded as +inf.
DistanceResult rho1(const AgmonField& f, int u, int v, Mode mode);

// 0 on allowed x allowed pairs, otherwise min(rho1(u,v), rho1(v,u)) with ties
// toward rho1(u,v).
DistanceResult rho(const AgmonField& f, int u, int v, Mode mode);

struct DistanceMatrix {
  int n = 0;
  std::vector<double> values;  // row-major
  double at(int u, int v) const { return values[static_cast<std::size_t>(u) * n + v]; }
};

// Batch form; entrywise equal to rho(...).value (bitwise).
DistanceMatrix rho_matrix(const AgmonField& f, Mode mode);

// Exhaustive enumeration of walks from u of at most max_edges edges with
// cost pruning; ground truth for rho1 on small graphs.
double rho1_oracle(const AgmonField& f, int u, int v, Mode mode, int max_edges);

// Recomputed cost of a DistanceResult from its walk: w(target) plus the sum
// of w over all walk vertices except the terminal. Used by tests and the
// verifier's witness printing.
double witness_cost(const AgmonField& f, const DistanceResult& r);

std::string distance_matrix_csv(const DistanceMatrix& m);

}  // namespace agmon
