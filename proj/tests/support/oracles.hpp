#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cwg/angle.hpp"
#include "cwg/graph.hpp"

namespace cwg::testing {

using cd = std::complex<double>;

inline Eigen::Index ix(std::size_t v) { return static_cast<Eigen::Index>(v); }

/// Dense adjacency assembled straight from the edge list with std::polar.
inline Eigen::MatrixXcd dense_adjacency(const Graph& g) {
  const auto n = ix(g.node_count());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (const Edge& e : g.edges()) a(ix(e.target), ix(e.source)) = std::polar(e.modulus, e.argument);
  return a;
}

/// D - A from the edge list.
inline Eigen::MatrixXcd dense_laplacian(const Graph& g) {
  Eigen::MatrixXcd a = dense_adjacency(g);
  Eigen::MatrixXcd l = -a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) l(i, i) += a.row(i).cwiseAbs().sum();
  return l;
}

/// D - |A| from the edge list.
inline Eigen::MatrixXd dense_nonnegative_laplacian(const Graph& g) {
  Eigen::MatrixXd a = dense_adjacency(g).cwiseAbs();
  Eigen::MatrixXd l = -a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) l(i, i) += a.row(i).sum();
  return l;
}

/// e^M by scaling and squaring around a 40-term Taylor series.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (std::ldexp(norm, -squarings) > 0.25) ++squarings;
  const Eigen::MatrixXcd s = m * std::ldexp(1.0, -squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = term * s / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

/// (I - diag(kappa) L)^steps x0 by explicit matrix powers.
inline Eigen::VectorXcd dt_matrix_power(const Graph& g, const Eigen::VectorXcd& x0,
                                        const Eigen::VectorXd& kappa, std::size_t steps) {
  const auto n = ix(g.node_count());
  const Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n) -
                             kappa.cast<cd>().asDiagonal() * dense_laplacian(g);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd base = p;
  for (std::size_t e = steps; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    base = base * base;
  }
  return acc * x0;
}

/// Weakly connected under both edge directions.
inline bool weakly_connected(const Graph& g) {
  std::vector<std::size_t> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : g.edges()) parent[find(e.source)] = find(e.target);
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (find(v) != find(0)) return false;
  }
  return true;
}

/// Every node reachable from some single node along directed edges.
inline bool has_root(const Graph& g) {
  const std::size_t n = g.node_count();
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{r};
    seen[r] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const Edge& e : g.edges()) {
        if (e.source == v && !seen[e.target]) {
          seen[e.target] = true;
          ++count;
          stack.push_back(e.target);
        }
      }
    }
    if (count == n) return true;
  }
  return false;
}

/// Classical signed-graph balance by exhaustive cycle enumeration: balanced iff every
/// cycle of the underlying undirected multigraph carries an even number of negative
/// edges. `negative[j][i]` / `present[j][i]` describe the directed edge j -> i.
class SignedCycleOracle {
 public:
  SignedCycleOracle(std::size_t n, std::vector<std::vector<bool>> present,
                    std::vector<std::vector<bool>> negative)
      : n_(n), present_(std::move(present)), negative_(std::move(negative)) {}

  bool balanced() {
    // Two-edge cycles j -> i -> j.
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) {
        if (present_[a][b] && present_[b][a] && negative_[a][b] != negative_[b][a]) return false;
      }
    }
    // Longer cycles: each unordered pair carries a single parity once the two-edge cycles
    // agree, so enumerating simple cycles of the underlying simple graph covers every case.
    for (std::size_t start = 0; start < n_; ++start) {
      std::vector<bool> on_path(n_, false);
      on_path[start] = true;
      if (!walk(start, start, 0, 1, on_path)) return false;
    }
    return true;
  }

 private:
  bool linked(std::size_t a, std::size_t b) const { return present_[a][b] || present_[b][a]; }
  bool parity(std::size_t a, std::size_t b) const {
    return present_[a][b] ? negative_[a][b] : negative_[b][a];
  }

  // Simple cycles whose smallest node is `start`.
  bool walk(std::size_t start, std::size_t at, int negatives, std::size_t length,
            std::vector<bool>& on_path) {
    for (std::size_t next = start; next < n_; ++next) {
      if (!linked(at, next)) continue;
      const int neg = negatives + (parity(at, next) ? 1 : 0);
      if (next == start) {
        if (length >= 3 && neg % 2 != 0) return false;
        continue;
      }
      if (on_path[next]) continue;
      on_path[next] = true;
      const bool ok = walk(start, next, neg, length + 1, on_path);
      on_path[next] = false;
      if (!ok) return false;
    }
    return true;
  }

  std::size_t n_;
  std::vector<std::vector<bool>> present_;
  std::vector<std::vector<bool>> negative_;
};

/// Hand-rolled random instance: signatures, a random rooted spanning arborescence for
/// connectivity, and extra edges with probability p. Arguments follow the signatures.
struct RandomInstance {
  Graph graph;
  std::vector<double> thetas;
};

inline RandomInstance random_connected_balanced(std::mt19937_64& rng, std::size_t n, double p,
                                                const std::vector<double>& signature_pool = {},
                                                double mod_lo = 0.5, double mod_hi = 3.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> modulus(mod_lo, mod_hi);
  std::vector<double> thetas(n);
  for (auto& t : thetas) {
    t = signature_pool.empty()
            ? angle(rng)
            : signature_pool[std::uniform_int_distribution<std::size_t>(0, signature_pool.size() - 1)(rng)];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<Edge> edges;
  auto add = [&](std::size_t j, std::size_t i) {
    if (used[j][i]) return;
    used[j][i] = true;
    edges.push_back({j, i, modulus(rng), wrap_angle(thetas[i] - thetas[j])});
  };
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t parent = order[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)];
    add(parent, order[k]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j && unit(rng) < p) add(j, i);
    }
  }
  return {Graph::from_polar(n, std::move(edges)), std::move(thetas)};
}

/// Eigenvalues sorted by modulus.
inline std::vector<cd> eigenvalues_by_modulus(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<cd> ev(solver.eigenvalues().data(),
                     solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](cd a, cd b) { return std::abs(a) < std::abs(b); });
  return ev;
}

/// Brute-force bottleneck matching over all permutations (small inputs only).
inline double permutation_distance(std::vector<cd> a, const std::vector<cd>& b) {
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[perm[k]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace cwg::testing
