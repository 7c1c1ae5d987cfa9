#include "agmon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace agmon {

double SymmetricMatrix::max_row_sum() const {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::abs(at(i, j));
    best = std::max(best, s);
  }
  return best;
}

double SymmetricMatrix::frobenius() const {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

double SymmetricMatrix::gershgorin_lower_bound() const {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) r += std::abs(at(i, j));
    lo = std::min(lo, at(i, i) - r);
  }
  return lo;
}

SymmetricMatrix assemble_operator(const Problem& p) {
  const int n = p.graph.n;
  auto h = SymmetricMatrix::zero(n);
  for (int i = 0; i < n; ++i) {
    h.at(i, i) = static_cast<double>(p.graph.degrees[i]) + p.potential[i];
    for (int j : p.graph.adjacency[i]) h.at(i, j) = -1.0;
  }
  return h;
}

namespace {

double offdiag_norm(const SymmetricMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) s += 2.0 * m.at(i, j) * m.at(i, j);
  return std::sqrt(s);
}

}  // namespace

std::vector<Eigenpair> eigendecompose(const SymmetricMatrix& h, double tol) {
  if (tol <= 0.0) fail(Errc::invalid_spec, "eigensolver tolerance must be positive");
  const int n = h.n;
  if (n < 1) fail(Errc::invalid_spec, "matrix must be non-empty");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (h.at(i, j) != h.at(j, i)) fail(Errc::invalid_spec, "matrix is not symmetric");

  SymmetricMatrix a = h;
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
  auto vat = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

  // The sweep must push the off-diagonal mass below the per-pair residual cap,
  // not just below a Frobenius-relative threshold: residual components are
  // bounded by off-diagonal column norms.
  const double residual_cap = tol * (1.0 + h.max_row_sum());
  const double stop = 0.5 * std::min(tol * std::max(a.frobenius(), 1e-300), residual_cap);
  const int max_sweeps = 100;
  int sweeps = 0;
  while (offdiag_norm(a) > stop) {
    if (++sweeps > max_sweeps)
      fail(Errc::convergence_failure, "Jacobi sweep cap exceeded");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (apq == 0.0) continue;
        const double app = a.at(p, p);
        const double aqq = a.at(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // A <- J^T A J on rows/columns p, q
        a.at(p, p) = app - t * apq;
        a.at(q, q) = aqq + t * apq;
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(p, k) = a.at(k, p);
          a.at(k, q) = s * akp + c * akq;
          a.at(q, k) = a.at(k, q);
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = vat(k, p);
          const double vkq = vat(k, q);
          vat(k, p) = c * vkp - s * vkq;
          vat(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a.at(i, i) < a.at(j, j); });

  const double floor = h.gershgorin_lower_bound();
  std::vector<Eigenpair> out;
  out.reserve(n);
  for (int k : order) {
    Eigenpair e;
    e.energy = std::max(a.at(k, k), floor);
    e.vector.resize(n);
    for (int i = 0; i < n; ++i) e.vector[i] = vat(i, k);
    for (int i = 0; i < n; ++i) {
      if (std::abs(e.vector[i]) > 1e-12) {
        if (e.vector[i] < 0.0)
          for (double& x : e.vector) x = -x;
        break;
      }
    }
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
      double hx = 0.0;
      for (int j = 0; j < n; ++j) hx += h.at(i, j) * e.vector[j];
      r = std::max(r, std::abs(hx - e.energy * e.vector[i]));
    }
    e.residual = r;
    if (r > residual_cap) fail(Errc::convergence_failure, "eigenpair residual above tolerance");
    out.push_back(std::move(e));
  }
  return out;
}

double residual(const Problem& p, const Eigenpair& e) {
  const int n = p.graph.n;
  if (static_cast<int>(e.vector.size()) != n)
    fail(Errc::length_mismatch, "eigenvector length " + std::to_string(e.vector.size()) +
                                    " for n=" + std::to_string(n));
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    double hx = (static_cast<double>(p.graph.degrees[i]) + p.potential[i]) * e.vector[i];
    for (int j : p.graph.adjacency[i]) hx -= e.vector[j];
    r = std::max(r, std::abs(hx - e.energy * e.vector[i]));
  }
  return r;
}

RegionPartition partition_regions(const Problem& p, double energy) {
  RegionPartition part;
  part.energy = energy;
  for (int v = 0; v < p.graph.n; ++v) {
    if (p.potential[v] <= energy)
      part.allowed.push_back(v);
    else
      part.forbidden.push_back(v);
  }
  return part;
}

MaxPrincipleCheck max_principle_check(const Problem& p, const Eigenpair& e, double float_tol) {
  MaxPrincipleCheck check;
  const auto part = partition_regions(p, e.energy);
  check.empty_allowed = part.allowed.empty();
  for (int v = 0; v < p.graph.n; ++v) {
    const double m = std::abs(e.vector[v]);
    if (m > check.sup_all) {
      check.sup_all = m;
      check.argmax_vertex = v;
    }
  }
  if (check.argmax_vertex < 0) check.argmax_vertex = 0;  // all-zero vector (degenerate input)
  for (int v : part.allowed) check.sup_allowed = std::max(check.sup_allowed, std::abs(e.vector[v]));
  check.holds = !check.empty_allowed && (check.sup_all - check.sup_allowed <= float_tol);
  return check;
}

}  // namespace agmon
