#include "agmon/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "agmon/emit.hpp"

namespace agmon {

const char* mode_name(Mode m) { return m == Mode::literal ? "literal" : "strict"; }

Mode parse_mode(const std::string& s) {
  if (s == "literal") return Mode::literal;
  if (s == "strict") return Mode::strict;
  fail(Errc::invalid_spec, "mode must be literal or strict, got \"" + s + "\"");
}

AgmonField agmon_field(const Problem& p, double energy) {
  AgmonField f;
  f.graph = p.graph;
  f.energy = energy;
  const int n = p.graph.n;
  f.excess.resize(n);
  f.weight.resize(n);
  for (int v = 0; v < n; ++v) {
    const double plus = std::max(p.potential[v] - energy, 0.0);
    const double q = plus / static_cast<double>(p.graph.degrees[v]);
    // log(1 + q) with full relative precision at every magnitude (Goldberg's
    // correction); exactly zero iff q is zero
    const double u = 1.0 + q;
    f.excess[v] = q;
    f.weight[v] = (u == 1.0) ? q : std::log(u) * q / (u - 1.0);
  }
  f.partition = partition_regions(p, energy);
  f.allowed_mask.assign(n, 0);
  for (int v : f.partition.allowed) f.allowed_mask[v] = 1;
  return f;
}

NodeDistance node_weighted_distance(const AgmonField& f, int source, Mode mode) {
  const Graph& g = f.graph;
  NodeDistance nd{std::vector<double>(g.n, kInf), std::vector<int>(g.n, -1)};
  if (source < 0 || source >= g.n) fail(Errc::index_out_of_range, "source vertex");
  const bool forbidden_only = (mode == Mode::strict);
  if (forbidden_only && f.is_allowed(source)) return nd;  // no admissible walk leaves source

  using Item = std::pair<double, int>;  // (distance, vertex); lower index wins ties
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  std::vector<char> settled(g.n, 0);
  nd.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, x] = heap.top();
    heap.pop();
    if (settled[x]) continue;
    settled[x] = 1;
    const double leave = d + f.weight[x];
    for (int y : g.adjacency[x]) {
      if (forbidden_only && f.is_allowed(y)) continue;
      if (leave < nd.dist[y]) {
        nd.dist[y] = leave;
        nd.pred[y] = x;
        heap.emplace(leave, y);
      }
    }
  }
  return nd;
}

namespace {

void check_vertex(const AgmonField& f, int v) {
  if (v < 0 || v >= f.graph.n) fail(Errc::index_out_of_range, "vertex " + std::to_string(v));
}

}  // namespace

DistanceResult rho1(const AgmonField& f, int u, int v, Mode mode) {
  check_vertex(f, u);
  check_vertex(f, v);
  DistanceResult r;
  r.mode = mode;
  r.target = v;
  const auto nd = node_weighted_distance(f, u, mode);
  const double threshold = f.excess[v];

  // min over p with finite D and neighbors t of p with q(t) >= q(v) of
  // D(u,p) + w(p); scan ordered by (p, t) so tie-broken witnesses are
  // deterministic.
  double best = kInf;
  int best_p = -1, best_t = -1;
  for (int p = 0; p < f.graph.n; ++p) {
    if (nd.dist[p] == kInf) continue;
    const double cand = nd.dist[p] + f.weight[p];
    if (cand >= best) continue;
    for (int t : f.graph.adjacency[p]) {
      if (f.excess[t] >= threshold) {
        best = cand;
        best_p = p;
        best_t = t;
        break;
      }
    }
  }
  if (best_p < 0) return r;  // +inf (strict mode only)

  r.value = f.weight[v] + best;
  std::vector<int> walk;
  for (int x = best_p; x != -1; x = nd.pred[x]) walk.push_back(x);
  std::reverse(walk.begin(), walk.end());
  walk.push_back(best_t);
  r.witness = std::move(walk);
  return r;
}

DistanceResult rho(const AgmonField& f, int u, int v, Mode mode) {
  check_vertex(f, u);
  check_vertex(f, v);
  if (f.is_allowed(u) && f.is_allowed(v)) {
    DistanceResult r;
    r.value = 0.0;
    r.mode = mode;
    r.target = -1;
    return r;
  }
  DistanceResult a = rho1(f, u, v, mode);
  DistanceResult b = rho1(f, v, u, mode);
  return (a.value <= b.value) ? a : b;
}

DistanceMatrix rho_matrix(const AgmonField& f, Mode mode) {
  const int n = f.graph.n;
  // vertices by descending excess; admissible terminal sets are prefixes
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return f.excess[i] > f.excess[j]; });

  std::vector<double> m1(static_cast<std::size_t>(n) * n, kInf);
  std::vector<double> reach(n), prefix_min(n);
  for (int u = 0; u < n; ++u) {
    const auto nd = node_weighted_distance(f, u, mode);
    for (int t = 0; t < n; ++t) {
      double best = kInf;
      for (int p : f.graph.adjacency[t])
        if (nd.dist[p] != kInf) best = std::min(best, nd.dist[p] + f.weight[p]);
      reach[t] = best;
    }
    double run = kInf;
    for (int k = 0; k < n; ++k) {
      run = std::min(run, reach[order[k]]);
      prefix_min[k] = run;
    }
    for (int v = 0; v < n; ++v) {
      const double threshold = f.excess[v];
      // count of terminals with q >= threshold; at least 1 (v itself)
      auto it = std::partition_point(order.begin(), order.end(),
                                     [&](int t) { return f.excess[t] >= threshold; });
      const auto count = static_cast<std::size_t>(it - order.begin());
      m1[static_cast<std::size_t>(u) * n + v] = f.weight[v] + prefix_min[count - 1];
    }
  }

  DistanceMatrix m;
  m.n = n;
  m.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (f.is_allowed(u) && f.is_allowed(v)) continue;  // convention: 0
      m.values[static_cast<std::size_t>(u) * n + v] =
          std::min(m1[static_cast<std::size_t>(u) * n + v],
                   m1[static_cast<std::size_t>(v) * n + u]);
    }
  return m;
}

double rho1_oracle(const AgmonField& f, int u, int v, Mode mode, int max_edges) {
  check_vertex(f, u);
  check_vertex(f, v);
  const double wv = f.weight[v];
  const double threshold = f.excess[v];
  double best = kInf;
  // depth-first over walks; cost = sum of w over vertices already left
  auto step = [&](auto&& self, int x, double cost, int edges) -> void {
    if (edges >= 1 && f.excess[x] >= threshold) best = std::min(best, cost + wv);
    if (edges == max_edges) return;
    if (mode == Mode::strict && f.is_allowed(x)) return;  // x may not be left
    const double leave = cost + f.weight[x];
    if (leave + wv >= best) return;  // cannot strictly improve below here
    for (int y : f.graph.adjacency[x]) self(self, y, leave, edges + 1);
  };
  step(step, u, 0.0, 0);
  return best;
}

double witness_cost(const AgmonField& f, const DistanceResult& r) {
  if (r.witness.empty()) return r.target < 0 ? 0.0 : kInf;
  double cost = f.weight[r.target];
  for (std::size_t i = 0; i + 1 < r.witness.size(); ++i) cost += f.weight[r.witness[i]];
  return cost;
}

std::string distance_matrix_csv(const DistanceMatrix& m) {
  std::string out = "u\\v";
  for (int v = 0; v < m.n; ++v) out += "," + std::to_string(v);
  out += "\n";
  for (int u = 0; u < m.n; ++u) {
    out += std::to_string(u);
    for (int v = 0; v < m.n; ++v) out += "," + fmt17(m.at(u, v));
    out += "\n";
  }
  return out;
}

}  // namespace agmon
