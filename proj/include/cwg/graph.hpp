#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cwg/errors.hpp"

namespace cwg {

/// Directed edge source -> target carrying the weight modulus∠argument.
///
/// In adjacency-matrix terms this is the entry a[target][source]. Node indices
/// are 0-based; the file format and CLI present them 1-based.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double modulus = 1.0;
  double argument = 0.0;

  std::complex<double> weight() const noexcept;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge given as a rectangular complex weight.
struct ComplexEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::complex<double> weight;
};

/// Validation failure raised while building a Graph.
class GraphError : public Error {
 public:
  enum class Kind { kDuplicateEdge, kSelfLoop, kZeroWeight, kIndexOutOfRange, kNonFinite };

  GraphError(Kind kind, std::size_t position, const Edge& edge);

  Kind kind() const noexcept { return kind_; }
  /// Position of the offending edge in the caller's input list.
  std::size_t position() const noexcept { return position_; }
  const Edge& edge() const noexcept { return edge_; }

 private:
  Kind kind_;
  std::size_t position_;
  Edge edge_;
};

/// Immutable directed graph with nonzero complex edge weights.
///
/// Edges are kept sorted by (source, target) and arguments are normalized into
/// (-pi, pi]. No self-loops, no parallel edges.
class Graph {
 public:
  /// Builds a graph from polar edges. Throws GraphError on the first invalid edge.
  static Graph from_polar(std::size_t node_count, std::vector<Edge> edges);
  static Graph from_complex(std::size_t node_count, std::span<const ComplexEdge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }

  /// Indices (into edges()) of edges entering / leaving a node, in sorted edge order.
  std::span<const std::size_t> in_edges(std::size_t node) const;
  std::span<const std::size_t> out_edges(std::size_t node) const;

  std::optional<std::size_t> find_edge(std::size_t source, std::size_t target) const;

  /// Bitwise equality of node count and edge list.
  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph() = default;

  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

Graph build_graph(std::size_t node_count, std::vector<Edge> edges);
Graph build_graph(std::size_t node_count, std::span<const ComplexEdge> edges);

/// Subgraph induced by `nodes` (sorted, distinct). Node k of the result is nodes[k].
Graph induced_subgraph(const Graph& g, std::span<const std::size_t> nodes);

/// Same topology, every argument replaced by `argument_of(edge)`.
template <typename Fn>
Graph with_arguments(const Graph& g, Fn&& argument_of) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.argument = argument_of(e);
  return Graph::from_polar(g.node_count(), std::move(edges));
}

/// Human-readable 1-based rendering, e.g. "(2 -> 3, 1∠3.14159)".
std::string describe(const Edge& e);

}  // namespace cwg
