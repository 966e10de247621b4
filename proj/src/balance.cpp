#include "cwg/balance.hpp"

#include <cmath>
#include <sstream>

#include "cwg/laplacian.hpp"

namespace cwg {

namespace {

SignatureAssignment propagate(const Graph& g, const SpanningTree& tree) {
  SignatureAssignment s;
  s.root = tree.root;
  s.thetas.assign(g.node_count(), 0.0);
  for (const TreeEdge& t : tree.edges) {
    const double arg = g.edge(t.edge_index).argument;
    s.thetas[t.child] = wrap_angle(t.reversed ? s.thetas[t.parent] - arg
                                              : s.thetas[t.parent] + arg);
  }
  return s;
}

BalanceReport check_over_tree(const Graph& g, SpanningTree tree, double tol) {
  BalanceReport report;
  report.tolerance_used = tol;
  SignatureAssignment s = propagate(g, tree);

  std::vector<bool> on_tree(g.edge_count(), false);
  for (const TreeEdge& t : tree.edges) on_tree[t.edge_index] = true;

  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    if (on_tree[k]) continue;
    const Edge& e = g.edge(k);
    const double expected = angle_difference(s.thetas[e.target], s.thetas[e.source]);
    const double deviation = angle_difference(e.argument, expected);
    if (std::abs(deviation) > tol) {
      report.witness = BalanceWitness{k,         e.source,  e.target,
                                      expected,  e.argument, deviation,
                                      fundamental_cycle(g, tree, k)};
      report.tree = std::move(tree);
      return report;
    }
  }
  report.balanced = true;
  report.zeta = zeta_vector(s);
  report.signatures = std::move(s);
  report.tree = std::move(tree);
  return report;
}

std::size_t global_edge(const Graph& g, const Graph& sub, std::span<const std::size_t> nodes,
                        std::size_t local_edge) {
  const Edge& e = sub.edge(local_edge);
  return *g.find_edge(nodes[e.source], nodes[e.target]);
}

}  // namespace

SignatureAssignment assign_signatures(const Graph& g, const SpanningTree& tree) {
  tree.validate(g, /*allow_weak=*/true);
  return propagate(g, tree);
}

BalanceReport check_balance(const Graph& g, double angle_tol) {
  TreeSearch search = find_spanning_tree(g);
  if (!search.connected()) {
    std::ostringstream msg;
    msg << "graph has no spanning tree; unreachable nodes:";
    for (std::size_t v : search.unreachable) msg << ' ' << v + 1;
    throw ConnectivityError(msg.str());
  }
  return check_over_tree(g, std::move(*search.tree), angle_tol);
}

bool GraphBalance::balanced() const noexcept {
  for (const auto& c : components) {
    if (!c.balanced()) return false;
  }
  return true;
}

std::optional<std::vector<double>> GraphBalance::signatures(std::size_t node_count) const {
  std::vector<double> thetas(node_count, 0.0);
  for (const auto& c : components) {
    if (!c.balanced()) return std::nullopt;
    for (std::size_t k = 0; k < c.nodes.size(); ++k) {
      thetas.at(c.nodes[k]) = c.report.signatures->thetas[k];
    }
  }
  return thetas;
}

GraphBalance check_balance_any(const Graph& g, double angle_tol) {
  GraphBalance result;
  for (auto& nodes : weak_components(g)) {
    const Graph sub = induced_subgraph(g, nodes);
    TreeSearch search = find_spanning_tree(sub);
    ComponentBalance comp;
    comp.has_directed_tree = search.connected();
    comp.report = check_over_tree(
        sub, search.connected() ? std::move(*search.tree) : weak_spanning_tree(sub), angle_tol);
    if (comp.report.witness) {
      BalanceWitness& w = *comp.report.witness;
      w.edge_index = global_edge(g, sub, nodes, w.edge_index);
      w.source = nodes[w.source];
      w.target = nodes[w.target];
      for (auto& v : w.cycle.nodes) v = nodes[v];
      for (auto& step : w.cycle.steps) step.edge_index = global_edge(g, sub, nodes, step.edge_index);
    }
    comp.nodes = std::move(nodes);
    result.components.push_back(std::move(comp));
  }
  return result;
}

std::optional<std::vector<double>> balanced_signatures(const Graph& g, double angle_tol) {
  return check_balance_any(g, angle_tol).signatures(g.node_count());
}

Eigen::VectorXcd zeta_vector(std::span<const double> thetas) {
  Eigen::VectorXcd z(static_cast<Eigen::Index>(thetas.size()));
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    z(static_cast<Eigen::Index>(i)) = unit_phasor(thetas[i]);
  }
  return z;
}

Eigen::VectorXcd zeta_vector(const SignatureAssignment& s) { return zeta_vector(s.thetas); }

double kernel_residual(const Graph& g, const Eigen::VectorXcd& zeta) {
  return apply_laplacian(g, zeta).cwiseAbs().maxCoeff();
}

GaugeResult gauge_transform(const Graph& g, const Eigen::VectorXcd& zeta, double tol) {
  if (zeta.size() != static_cast<Eigen::Index>(g.node_count())) {
    throw DimensionError("zeta has " + std::to_string(zeta.size()) + " entries, graph has " +
                         std::to_string(g.node_count()) + " nodes");
  }
  for (Eigen::Index i = 0; i < zeta.size(); ++i) {
    if (std::abs(std::abs(zeta(i)) - 1.0) > tol) {
      throw BalanceError("zeta entry " + std::to_string(i + 1) + " does not have unit modulus");
    }
  }
  double leakage = 0.0;
  double deviation = 0.0;
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const auto i = static_cast<Eigen::Index>(e.target);
    const auto j = static_cast<Eigen::Index>(e.source);
    const std::complex<double> gauged = std::conj(zeta(i)) * e.weight() * zeta(j);
    const double dev = std::abs(gauged - e.modulus);
    if (dev > tol * e.modulus) {
      throw BalanceError("zeta inconsistent with graph at edge " + describe(e));
    }
    leakage = std::max(leakage, std::abs(gauged.imag()));
    deviation = std::max(deviation, dev);
    edges.push_back({e.source, e.target, e.modulus, 0.0});
  }
  return {Graph::from_polar(g.node_count(), std::move(edges)), leakage, deviation};
}

}  // namespace cwg
