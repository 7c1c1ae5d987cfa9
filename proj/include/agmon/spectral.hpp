// Assembly of H = L + diag(W), dense symmetric eigensolver, region partition
// and the maximum-principle check.
#pragma once

#include <vector>

#include "agmon/graph.hpp"

namespace agmon {

struct SymmetricMatrix {
  int n = 0;
  std::vector<double> a;  // row-major n*n

  static SymmetricMatrix zero(int n) {
    return SymmetricMatrix{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  }
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  double max_row_sum() const;  // infinity norm
  double frobenius() const;
  // min_i (a_ii - sum_{j != i} |a_ij|); every eigenvalue is >= this.
  double gershgorin_lower_bound() const;
};

struct Eigenpair {
  double energy = 0.0;
  std::vector<double> vector;  // unit Euclidean norm
  double residual = 0.0;       // max-norm of H*phi - E*phi
};

struct RegionPartition {
  double energy = 0.0;
  std::vector<int> allowed;    // sorted: W(v) <= E
  std::vector<int> forbidden;  // sorted complement

  bool operator==(const RegionPartition& other) const = default;
};

SymmetricMatrix assemble_operator(const Problem& p);

// Cyclic Jacobi. Returns all n eigenpairs ascending by energy, orthonormal
// vectors, sign convention: first component with |x| > 1e-12 is positive.
// Computed energies are floored at the Gershgorin lower bound (for L + W this
// equals min W, so allowed regions of true eigenpairs cannot be emptied by
// roundoff).
std::vector<Eigenpair> eigendecompose(const SymmetricMatrix& h, double tol = 1e-10);

double residual(const Problem& p, const Eigenpair& e);

RegionPartition partition_regions(const Problem& p, double energy);

struct MaxPrincipleCheck {
  bool holds = false;
  bool empty_allowed = false;
  int argmax_vertex = -1;    // smallest index attaining sup over V
  double sup_all = 0.0;      // sup_V |phi|
  double sup_allowed = 0.0;  // sup_{A_V} |phi|
};

// holds iff A_V is non-empty and sup_V |phi| - sup_{A_V} |phi| <= float_tol.
MaxPrincipleCheck max_principle_check(const Problem& p, const Eigenpair& e,
                                      double float_tol = 1e-9);

}  // namespace agmon
