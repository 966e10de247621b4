#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cwg/angle.hpp"
#include "cwg/connectivity.hpp"
#include "cwg/graph.hpp"

namespace cwg {

/// One edge of a weak cycle. `forward` means the edge is traversed source -> target.
struct WeakStep {
  std::size_t edge_index = 0;
  bool forward = true;

  friend bool operator==(const WeakStep&, const WeakStep&) = default;
};

/// Closed walk v_0 -> v_1 -> ... -> v_0 ignoring edge direction.
struct WeakCycle {
  /// nodes[k] is where steps[k] starts; steps.back() returns to nodes.front().
  std::vector<std::size_t> nodes;
  std::vector<WeakStep> steps;

  /// wrap(sum of +argument for forward steps and -argument for reverse steps).
  double argument_sum(const Graph& g) const;
};

/// Fundamental cycle closed by the off-tree edge `edge_index`: the edge itself
/// followed by the tree path back to its source.
WeakCycle fundamental_cycle(const Graph& g, const SpanningTree& tree, std::size_t edge_index);

enum class CycleMode {
  /// Fundamental cycles of an undirected BFS forest; polynomial.
  kBasis,
  /// Every simple weak cycle; exponential, meant for small graphs.
  kEnumerate,
};

struct CycleConsistency {
  bool consistent = true;
  /// First inconsistent cycle found.
  std::optional<WeakCycle> witness;
  /// The witness cycle's product is a negative real (argument sum ≡ pi).
  bool witness_real_negative = false;
  std::size_t cycles_checked = 0;
};

/// Checks that every weak cycle has argument sum ≡ 0 (mod 2 pi), i.e. that the
/// product of forward weights and inverse reverse weights is a positive real.
/// Works on any graph and never computes node signatures.
CycleConsistency cycle_consistency_oracle(const Graph& g, CycleMode mode = CycleMode::kBasis,
                                          double angle_tol = kDefaultAngleTolerance);

}  // namespace cwg
