#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cwg/graph.hpp"

namespace cwg {

/// Strongly connected components and the condensation DAG.
struct SccDecomposition {
  /// component_of[v] is the index of v's component.
  std::vector<std::size_t> component_of;
  /// Members of each component, ascending. Components are numbered by their lowest node.
  std::vector<std::vector<std::size_t>> components;
  /// Condensation edges (from, to), deduplicated and sorted.
  std::vector<std::pair<std::size_t, std::size_t>> condensation_edges;

  std::size_t component_count() const noexcept { return components.size(); }
  /// Components with no incoming condensation edge.
  std::vector<std::size_t> source_components() const;
};

/// Tarjan's algorithm, iterative, O(N + |E|).
SccDecomposition strongly_connected_components(const Graph& g);

struct TreeEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  /// Index of the host graph edge parent -> child.
  std::size_t edge_index = 0;
  /// True when the host edge runs child -> parent (weak trees only).
  bool reversed = false;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

/// Directed spanning tree: one parent edge per non-root node, listed in BFS order.
struct SpanningTree {
  std::size_t root = 0;
  std::vector<TreeEdge> edges;

  /// parent_edge[v] indexes into `edges`; empty for the root.
  std::vector<std::optional<std::size_t>> parent_slots(std::size_t node_count) const;

  bool directed() const noexcept;

  /// Throws Error unless this is a spanning tree of g with edges in root-to-leaf order.
  /// Reversed edges are accepted only when `allow_weak` is set.
  void validate(const Graph& g, bool allow_weak = false) const;
};

/// Outcome of a spanning tree search: a tree, or the nodes the chosen root cannot reach.
struct TreeSearch {
  std::optional<SpanningTree> tree;
  std::vector<std::size_t> unreachable;

  bool connected() const noexcept { return tree.has_value(); }
};

/// Roots the tree at the lowest node of the unique source SCC and grows it breadth-first.
/// With several source SCCs the graph has no spanning tree; `unreachable` then lists the
/// nodes missed by a BFS from the lowest node of any source SCC.
TreeSearch find_spanning_tree(const Graph& g);

bool is_connected(const Graph& g);

/// Breadth-first spanning tree of the underlying undirected graph, rooted at the lowest
/// node and ignoring edge direction. Throws ConnectivityError if g is not weakly connected.
SpanningTree weak_spanning_tree(const Graph& g);

/// Weakly connected components, each sorted ascending, ordered by lowest node.
std::vector<std::vector<std::size_t>> weak_components(const Graph& g);

}  // namespace cwg
