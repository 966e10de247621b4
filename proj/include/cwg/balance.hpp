#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cwg/angle.hpp"
#include "cwg/connectivity.hpp"
#include "cwg/cycles.hpp"
#include "cwg/graph.hpp"

namespace cwg {

/// Node signatures theta_i in (-pi, pi], with theta[root] pinned to 0.
struct SignatureAssignment {
  std::vector<double> thetas;
  std::size_t root = 0;
};

/// Off-tree edge whose argument disagrees with the signatures propagated along the tree.
struct BalanceWitness {
  std::size_t edge_index = 0;
  std::size_t source = 0;
  std::size_t target = 0;
  /// wrap(theta_target - theta_source)
  double expected_argument = 0.0;
  double actual_argument = 0.0;
  /// wrap(actual - expected); exceeds the tolerance in magnitude.
  double deviation = 0.0;
  /// Weak cycle closed by the witness edge over the spanning tree.
  WeakCycle cycle;
};

struct BalanceReport {
  bool balanced = false;
  /// Present iff balanced.
  std::optional<SignatureAssignment> signatures;
  std::optional<Eigen::VectorXcd> zeta;
  /// Present iff unbalanced.
  std::optional<BalanceWitness> witness;
  double tolerance_used = kDefaultAngleTolerance;
  SpanningTree tree;
};

/// Propagates signatures from the root along the tree: theta_child = wrap(theta_parent + arg).
/// Throws Error if `tree` is not a spanning tree of g.
SignatureAssignment assign_signatures(const Graph& g, const SpanningTree& tree);

/// Decides structural balance of a connected graph by checking every off-tree edge
/// against the tree signatures. The witness is the first violating edge in sorted order.
/// Throws ConnectivityError if g has no spanning tree.
BalanceReport check_balance(const Graph& g, double angle_tol = kDefaultAngleTolerance);

/// Balance report for one weakly connected component.
struct ComponentBalance {
  /// Global node indices of the component, ascending. Signatures and zeta in the
  /// report index into this list; witness source/target are global.
  std::vector<std::size_t> nodes;
  BalanceReport report;
  /// False when the component only has a weak (undirected) spanning tree.
  bool has_directed_tree = true;

  bool balanced() const noexcept { return report.balanced; }
};

/// Result of check_balance_any over every weakly connected component.
struct GraphBalance {
  std::vector<ComponentBalance> components;

  bool balanced() const noexcept;
  /// Global signatures (one zero-pinned root per component), when balanced.
  std::optional<std::vector<double>> signatures(std::size_t node_count) const;
};

/// Splits g into weakly connected components and checks each one. Components
/// without a directed spanning tree are checked over a weak spanning tree, which
/// decides the same balance property.
GraphBalance check_balance_any(const Graph& g, double angle_tol = kDefaultAngleTolerance);

/// Signature-only balance decision that works on any graph, connected or not.
/// Returns the signatures (one root per weak component) iff balanced.
std::optional<std::vector<double>> balanced_signatures(const Graph& g,
                                                       double angle_tol = kDefaultAngleTolerance);

/// [1∠theta_1, ..., 1∠theta_N].
Eigen::VectorXcd zeta_vector(const SignatureAssignment& s);
Eigen::VectorXcd zeta_vector(std::span<const double> thetas);

/// max_i |(L zeta)_i|. Throws DimensionError if zeta has the wrong size.
double kernel_residual(const Graph& g, const Eigen::VectorXcd& zeta);

struct GaugeResult {
  /// Same topology, every weight replaced by its modulus.
  Graph graph;
  /// max over edges of |Im(conj(zeta_i) a_ij zeta_j)|.
  double max_imaginary_leakage = 0.0;
  /// max over edges of |conj(zeta_i) a_ij zeta_j - |a_ij||.
  double max_deviation = 0.0;
};

/// Applies the diagonal similarity D_zeta^-1 A D_zeta edge by edge.
/// Throws BalanceError when any gauged weight deviates from its modulus by more than
/// tol * modulus, and DimensionError on size mismatch.
GaugeResult gauge_transform(const Graph& g, const Eigen::VectorXcd& zeta, double tol = 1e-9);

}  // namespace cwg
