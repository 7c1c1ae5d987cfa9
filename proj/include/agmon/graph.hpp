// Graph representation, validation, deterministic generators and problem I/O.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace agmon {

enum class Errc {
  self_loop,
  duplicate_edge,
  index_out_of_range,
  disconnected,
  too_small,
  generation_failed,
  invalid_spec,
  malformed_input,
  length_mismatch,
  convergence_failure,
  empty_input,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

// Undirected simple connected graph, 0-indexed vertices, sorted adjacency.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adjacency;
  std::vector<int> degrees;

  // Edges as (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<int, int>> edge_list() const;

  bool operator==(const Graph& other) const = default;
};

struct Problem {
  Graph graph;
  std::vector<double> potential;
  std::string name;  // empty means unnamed

  bool operator==(const Problem& other) const = default;
};

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

// True iff breadth-first traversal from vertex 0 reaches all n vertices.
// Assumes structurally valid adjacency (indices in range).
bool is_connected(const Graph& g);

struct FamilySpec {
  enum class Kind { path, cycle, complete, grid, erdos_renyi };
  Kind kind = Kind::path;
  int n = 0;               // path / cycle / complete / erdos_renyi
  int rows = 0, cols = 0;  // grid
  double p = 0.0;          // erdos_renyi
  std::uint64_t seed = 0;  // erdos_renyi
  int max_retries = 1000;  // erdos_renyi rejection sampling cap

  static FamilySpec path(int n);
  static FamilySpec cycle(int n);
  static FamilySpec complete(int n);
  static FamilySpec grid(int rows, int cols);
  static FamilySpec erdos_renyi(int n, double p, std::uint64_t seed, int max_retries = 1000);

  std::string label() const;
};

Graph gen_family(const FamilySpec& spec);

// Potential models shared by the CLI, sweeps and test harnesses.
std::vector<double> const_potential(int n, double c);
std::vector<double> uniform_potential(int n, double lo, double hi, std::uint64_t seed);
std::vector<double> spike_potential(int n, double height, int vertex);

// Problem file format, see README. parse rejects unknown keys and schema
// violations; graph validation errors from build_graph propagate.
Problem parse_problem(const std::string& text);

// Canonical single-line document; parse_problem(serialize_problem(p)) == p,
// including potential bit patterns.
std::string serialize_problem(const Problem& p);

}  // namespace agmon
