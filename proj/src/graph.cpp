#include "cwg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "cwg/angle.hpp"

namespace cwg {

namespace {

std::string kind_text(GraphError::Kind kind) {
  switch (kind) {
    case GraphError::Kind::kDuplicateEdge:
      return "duplicate edge";
    case GraphError::Kind::kSelfLoop:
      return "self-loop";
    case GraphError::Kind::kZeroWeight:
      return "zero or negative modulus";
    case GraphError::Kind::kIndexOutOfRange:
      return "node index out of range";
    case GraphError::Kind::kNonFinite:
      return "non-finite weight";
  }
  return "invalid edge";
}

}  // namespace

std::complex<double> Edge::weight() const noexcept { return polar_weight(modulus, argument); }

std::string describe(const Edge& e) {
  std::ostringstream os;
  os.precision(6);
  os << '(' << e.source + 1 << " -> " << e.target + 1 << ", " << e.modulus << "∠" << e.argument
     << ')';
  return os.str();
}

GraphError::GraphError(Kind kind, std::size_t position, const Edge& edge)
    : Error(kind_text(kind) + " " + describe(edge) + " at edge #" + std::to_string(position + 1)),
      kind_(kind),
      position_(position),
      edge_(edge) {}

Graph Graph::from_polar(std::size_t node_count, std::vector<Edge> edges) {
  if (node_count == 0) throw Error("a graph needs at least one node");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Edge& e = edges[k];
    if (e.source >= node_count || e.target >= node_count) {
      throw GraphError(GraphError::Kind::kIndexOutOfRange, k, e);
    }
    if (e.source == e.target) throw GraphError(GraphError::Kind::kSelfLoop, k, e);
    if (!std::isfinite(e.modulus) || !std::isfinite(e.argument)) {
      throw GraphError(GraphError::Kind::kNonFinite, k, e);
    }
    if (!(e.modulus > 0.0)) throw GraphError(GraphError::Kind::kZeroWeight, k, e);
    e.argument = wrap_angle(e.argument);
  }

  std::vector<std::size_t> order(edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(edges[a].source, edges[a].target) < std::tie(edges[b].source, edges[b].target);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Edge& prev = edges[order[k - 1]];
    const Edge& cur = edges[order[k]];
    if (prev.source == cur.source && prev.target == cur.target) {
      throw GraphError(GraphError::Kind::kDuplicateEdge, std::max(order[k - 1], order[k]),
                       edges[std::max(order[k - 1], order[k])]);
    }
  }

  Graph g;
  g.node_count_ = node_count;
  g.edges_.reserve(edges.size());
  for (std::size_t k : order) g.edges_.push_back(edges[k]);
  g.in_.assign(node_count, {});
  g.out_.assign(node_count, {});
  for (std::size_t k = 0; k < g.edges_.size(); ++k) {
    g.out_[g.edges_[k].source].push_back(k);
    g.in_[g.edges_[k].target].push_back(k);
  }
  return g;
}

Graph Graph::from_complex(std::size_t node_count, std::span<const ComplexEdge> edges) {
  std::vector<Edge> polar;
  polar.reserve(edges.size());
  for (const auto& e : edges) {
    polar.push_back({e.source, e.target, std::abs(e.weight), std::arg(e.weight)});
  }
  return from_polar(node_count, std::move(polar));
}

std::span<const std::size_t> Graph::in_edges(std::size_t node) const { return in_.at(node); }

std::span<const std::size_t> Graph::out_edges(std::size_t node) const { return out_.at(node); }

std::optional<std::size_t> Graph::find_edge(std::size_t source, std::size_t target) const {
  if (source >= node_count_) return std::nullopt;
  const auto& out = out_[source];
  auto it = std::lower_bound(out.begin(), out.end(), target,
                             [&](std::size_t k, std::size_t t) { return edges_[k].target < t; });
  if (it == out.end() || edges_[*it].target != target) return std::nullopt;
  return *it;
}

Graph build_graph(std::size_t node_count, std::vector<Edge> edges) {
  return Graph::from_polar(node_count, std::move(edges));
}

Graph build_graph(std::size_t node_count, std::span<const ComplexEdge> edges) {
  return Graph::from_complex(node_count, edges);
}

Graph induced_subgraph(const Graph& g, std::span<const std::size_t> nodes) {
  std::vector<std::size_t> local(g.node_count(), g.node_count());
  for (std::size_t k = 0; k < nodes.size(); ++k) local.at(nodes[k]) = k;
  std::vector<Edge> edges;
  for (std::size_t v : nodes) {
    for (std::size_t k : g.out_edges(v)) {
      const Edge& e = g.edge(k);
      if (local[e.target] == g.node_count()) continue;
      edges.push_back({local[e.source], local[e.target], e.modulus, e.argument});
    }
  }
  return Graph::from_polar(nodes.size(), std::move(edges));
}

}  // namespace cwg
