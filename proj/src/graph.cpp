#include "agmon/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "agmon/emit.hpp"
#include "agmon/rng.hpp"

namespace agmon {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::disconnected: return "Disconnected";
    case Errc::too_small: return "TooSmall";
    case Errc::generation_failed: return "GenerationFailed";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::malformed_input: return "MalformedInput";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::convergence_failure: return "ConvergenceFailure";
    case Errc::empty_input: return "EmptyInput";
  }
  return "UnknownError";
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j : adjacency[i])
      if (i < j) edges.emplace_back(i, j);
  return edges;  // already lexicographic: i ascending, adjacency sorted
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 2) fail(Errc::too_small, "need at least 2 vertices, got " + std::to_string(n));
  std::set<std::pair<int, int>> seen;
  Graph g;
  g.n = n;
  g.adjacency.assign(n, {});
  for (auto [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      fail(Errc::index_out_of_range,
           "edge (" + std::to_string(i) + "," + std::to_string(j) + ") with n=" + std::to_string(n));
    if (i == j) fail(Errc::self_loop, "vertex " + std::to_string(i));
    std::pair<int, int> key = std::minmax(i, j);
    if (!seen.insert(key).second)
      fail(Errc::duplicate_edge, "(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
    g.adjacency[i].push_back(j);
    g.adjacency[j].push_back(i);
  }
  for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
  g.degrees.resize(n);
  for (int i = 0; i < n; ++i) g.degrees[i] = static_cast<int>(g.adjacency[i].size());
  if (!is_connected(g)) fail(Errc::disconnected, "graph is not connected");
  return g;
}

bool is_connected(const Graph& g) {
  if (g.n <= 0) return false;
  std::vector<char> seen(g.n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : g.adjacency[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        q.push(y);
      }
  }
  return reached == g.n;
}

FamilySpec FamilySpec::path(int n) { return {Kind::path, n, 0, 0, 0.0, 0, 1000}; }
FamilySpec FamilySpec::cycle(int n) { return {Kind::cycle, n, 0, 0, 0.0, 0, 1000}; }
FamilySpec FamilySpec::complete(int n) { return {Kind::complete, n, 0, 0, 0.0, 0, 1000}; }
FamilySpec FamilySpec::grid(int rows, int cols) { return {Kind::grid, 0, rows, cols, 0.0, 0, 1000}; }
FamilySpec FamilySpec::erdos_renyi(int n, double p, std::uint64_t seed, int max_retries) {
  return {Kind::erdos_renyi, n, 0, 0, p, seed, max_retries};
}

std::string FamilySpec::label() const {
  switch (kind) {
    case Kind::path: return "path(" + std::to_string(n) + ")";
    case Kind::cycle: return "cycle(" + std::to_string(n) + ")";
    case Kind::complete: return "complete(" + std::to_string(n) + ")";
    case Kind::grid: return "grid(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
    case Kind::erdos_renyi:
      return "er(n=" + std::to_string(n) + ",p=" + fmt17(p) + ",seed=" + std::to_string(seed) + ")";
  }
  return "?";
}

namespace {

Graph gen_erdos_renyi(const FamilySpec& s) {
  if (s.n < 2) fail(Errc::invalid_spec, "erdos_renyi needs n >= 2");
  if (!(s.p > 0.0 && s.p <= 1.0)) fail(Errc::invalid_spec, "erdos_renyi needs p in (0,1]");
  if (s.max_retries < 1) fail(Errc::invalid_spec, "erdos_renyi needs max_retries >= 1");
  SplitMix64 rng(s.seed);
  for (int attempt = 0; attempt < s.max_retries; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < s.n; ++i)
      for (int j = i + 1; j < s.n; ++j)
        if (rng.next_unit() < s.p) edges.emplace_back(i, j);
    // cheap connectivity probe before full validation
    Graph probe;
    probe.n = s.n;
    probe.adjacency.assign(s.n, {});
    for (auto [i, j] : edges) {
      probe.adjacency[i].push_back(j);
      probe.adjacency[j].push_back(i);
    }
    if (is_connected(probe)) return build_graph(s.n, edges);
  }
  fail(Errc::generation_failed,
       "erdos_renyi(" + std::to_string(s.n) + ") not connected after " +
           std::to_string(s.max_retries) + " attempts");
}

}  // namespace

Graph gen_family(const FamilySpec& spec) {
  std::vector<std::pair<int, int>> edges;
  switch (spec.kind) {
    case FamilySpec::Kind::path:
      if (spec.n < 2) fail(Errc::invalid_spec, "path needs n >= 2");
      for (int i = 0; i + 1 < spec.n; ++i) edges.emplace_back(i, i + 1);
      return build_graph(spec.n, edges);
    case FamilySpec::Kind::cycle:
      if (spec.n < 3) fail(Errc::invalid_spec, "cycle needs n >= 3");
      for (int i = 0; i + 1 < spec.n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(0, spec.n - 1);
      return build_graph(spec.n, edges);
    case FamilySpec::Kind::complete:
      if (spec.n < 2) fail(Errc::invalid_spec, "complete needs n >= 2");
      for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j) edges.emplace_back(i, j);
      return build_graph(spec.n, edges);
    case FamilySpec::Kind::grid: {
      if (spec.rows < 1 || spec.cols < 1 || spec.rows * spec.cols < 2)
        fail(Errc::invalid_spec, "grid needs rows >= 1, cols >= 1, rows*cols >= 2");
      auto id = [&](int r, int c) { return r * spec.cols + c; };
      for (int r = 0; r < spec.rows; ++r)
        for (int c = 0; c < spec.cols; ++c) {
          if (c + 1 < spec.cols) edges.emplace_back(id(r, c), id(r, c + 1));
          if (r + 1 < spec.rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
      return build_graph(spec.rows * spec.cols, edges);
    }
    case FamilySpec::Kind::erdos_renyi:
      return gen_erdos_renyi(spec);
  }
  fail(Errc::invalid_spec, "unknown family kind");
}

std::vector<double> const_potential(int n, double c) { return std::vector<double>(n, c); }

std::vector<double> uniform_potential(int n, double lo, double hi, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> w(n);
  for (double& x : w) x = rng.next_uniform(lo, hi);
  return w;
}

std::vector<double> spike_potential(int n, double height, int vertex) {
  std::vector<double> w(n, 0.0);
  w.at(vertex) = height;
  return w;
}

}  // namespace agmon
