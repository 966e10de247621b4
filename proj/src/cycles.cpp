#include "cwg/cycles.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace cwg {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Rooted forest given by parent links; parent_step[v] walks v -> parent(v).
struct Forest {
  std::vector<std::size_t> parent;
  std::vector<WeakStep> parent_step;
  std::vector<std::size_t> depth;
};

Forest forest_from_tree(const Graph& g, const SpanningTree& tree) {
  const std::size_t n = g.node_count();
  Forest f{std::vector<std::size_t>(n, kNone), std::vector<WeakStep>(n),
           std::vector<std::size_t>(n, 0)};
  for (const TreeEdge& t : tree.edges) {
    f.parent[t.child] = t.parent;
    // Tree edge parent -> child; walking child -> parent runs against it unless reversed.
    f.parent_step[t.child] = {t.edge_index, t.reversed};
    f.depth[t.child] = f.depth[t.parent] + 1;
  }
  return f;
}

/// The step `closing` from `from` to `to`, then the forest path from `to` back to `from`.
WeakCycle close_cycle(const Forest& f, std::size_t from, std::size_t to, WeakStep closing) {
  WeakCycle cycle;
  cycle.nodes.push_back(from);
  cycle.steps.push_back(closing);

  std::vector<std::size_t> up_nodes;  // to, ..., just below lca
  std::vector<WeakStep> up_steps;
  std::vector<std::size_t> down_nodes;  // from, ..., just below lca
  std::vector<WeakStep> down_steps;
  std::size_t a = to, b = from;
  while (a != b) {
    if (f.depth[a] >= f.depth[b]) {
      up_nodes.push_back(a);
      up_steps.push_back(f.parent_step[a]);
      a = f.parent[a];
    } else {
      down_nodes.push_back(b);
      down_steps.push_back(f.parent_step[b]);
      b = f.parent[b];
    }
  }
  const std::size_t lca = a;
  for (std::size_t k = 0; k < up_nodes.size(); ++k) {
    cycle.nodes.push_back(up_nodes[k]);
    cycle.steps.push_back(up_steps[k]);
  }
  // Descend lca -> from: reverse the recorded child -> parent steps.
  std::size_t at = lca;
  for (std::size_t k = down_nodes.size(); k-- > 0;) {
    cycle.nodes.push_back(at);
    cycle.steps.push_back({down_steps[k].edge_index, !down_steps[k].forward});
    at = down_nodes[k];
  }
  return cycle;
}

bool is_zero_angle(double theta, double tol) { return std::abs(wrap_angle(theta)) <= tol; }

class Checker {
 public:
  Checker(const Graph& g, double tol) : g_(g), tol_(tol) {}

  /// Returns false (and records the witness) when the cycle is inconsistent.
  bool check(WeakCycle cycle) {
    ++result.cycles_checked;
    const double sum = cycle.argument_sum(g_);
    if (is_zero_angle(sum, tol_)) return true;
    result.consistent = false;
    result.witness_real_negative = is_zero_angle(sum - kPi, tol_);
    result.witness = std::move(cycle);
    return false;
  }

  CycleConsistency result;

 private:
  const Graph& g_;
  double tol_;
};

CycleConsistency check_basis(const Graph& g, double tol) {
  const std::size_t n = g.node_count();
  Forest f{std::vector<std::size_t>(n, kNone), std::vector<WeakStep>(n),
           std::vector<std::size_t>(n, 0)};
  std::vector<bool> seen(n, false);
  std::vector<bool> in_forest(g.edge_count(), false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      auto visit = [&](std::size_t k, std::size_t w, bool edge_points_to_w) {
        if (seen[w]) return;
        seen[w] = true;
        in_forest[k] = true;
        f.parent[w] = v;
        // Walking w -> v is forward when the edge points from w to v.
        f.parent_step[w] = {k, !edge_points_to_w};
        f.depth[w] = f.depth[v] + 1;
        queue.push_back(w);
      };
      for (std::size_t k : g.out_edges(v)) visit(k, g.edge(k).target, true);
      for (std::size_t k : g.in_edges(v)) visit(k, g.edge(k).source, false);
    }
  }

  Checker checker(g, tol);
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    if (in_forest[k]) continue;
    const Edge& e = g.edge(k);
    if (!checker.check(close_cycle(f, e.source, e.target, {k, true}))) break;
  }
  return checker.result;
}

/// Depth-first enumeration of simple cycles through vertices >= start.
class Enumerator {
 public:
  Enumerator(const Graph& g, Checker& checker) : g_(g), checker_(checker) {
    const std::size_t n = g.node_count();
    neighbors_.assign(n, {});
    // One representative edge per unordered pair: the lowest edge index.
    std::vector<std::vector<std::size_t>> rep(n, std::vector<std::size_t>(n, kNone));
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      const Edge& e = g.edge(k);
      std::size_t& r = rep[std::min(e.source, e.target)][std::max(e.source, e.target)];
      if (r == kNone) r = k;
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rep[a][b] == kNone) continue;
        neighbors_[a].push_back({b, rep[a][b]});
        neighbors_[b].push_back({a, rep[a][b]});
      }
    }
    on_path_.assign(n, false);
  }

  bool run() {
    for (start_ = 0; start_ < g_.node_count(); ++start_) {
      path_nodes_ = {start_};
      path_steps_.clear();
      on_path_[start_] = true;
      const bool ok = extend(start_);
      on_path_[start_] = false;
      if (!ok) return false;
    }
    return true;
  }

 private:
  struct Neighbor {
    std::size_t node;
    std::size_t edge;
  };

  WeakStep step(std::size_t from, std::size_t edge) const {
    return {edge, g_.edge(edge).source == from};
  }

  bool extend(std::size_t v) {
    for (const Neighbor& nb : neighbors_[v]) {
      if (nb.node == start_) {
        // Close only cycles of length >= 3, once per orientation pair.
        if (path_nodes_.size() >= 3 && path_nodes_[1] < path_nodes_.back()) {
          WeakCycle cycle{path_nodes_, path_steps_};
          cycle.steps.push_back(step(v, nb.edge));
          if (!checker_.check(std::move(cycle))) return false;
        }
        continue;
      }
      if (nb.node < start_ || on_path_[nb.node]) continue;
      on_path_[nb.node] = true;
      path_steps_.push_back(step(v, nb.edge));
      path_nodes_.push_back(nb.node);
      const bool ok = extend(nb.node);
      path_nodes_.pop_back();
      path_steps_.pop_back();
      on_path_[nb.node] = false;
      if (!ok) return false;
    }
    return true;
  }

  const Graph& g_;
  Checker& checker_;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<bool> on_path_;
  std::vector<std::size_t> path_nodes_;
  std::vector<WeakStep> path_steps_;
  std::size_t start_ = 0;
};

constexpr std::size_t kMaxEnumerationNodes = 20;

CycleConsistency check_enumerate(const Graph& g, double tol) {
  if (g.node_count() > kMaxEnumerationNodes) {
    throw Error("full weak-cycle enumeration is limited to " +
                std::to_string(kMaxEnumerationNodes) + " nodes");
  }
  Checker checker(g, tol);
  // Two-cycles formed by mutual edges j -> i, i -> j.
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    if (e.source > e.target) continue;
    const auto back = g.find_edge(e.target, e.source);
    if (!back) continue;
    if (!checker.check(WeakCycle{{e.source, e.target}, {{k, true}, {*back, true}}})) {
      return checker.result;
    }
  }
  // Once every two-cycle is consistent, both edges of a mutual pair contribute the same
  // oriented argument, so longer cycles need only one representative per pair.
  Enumerator(g, checker).run();
  return checker.result;
}

}  // namespace

double WeakCycle::argument_sum(const Graph& g) const {
  double sum = 0.0;
  for (const WeakStep& s : steps) {
    const double a = g.edge(s.edge_index).argument;
    sum += s.forward ? a : -a;
  }
  return wrap_angle(sum);
}

WeakCycle fundamental_cycle(const Graph& g, const SpanningTree& tree, std::size_t edge_index) {
  const Edge& e = g.edge(edge_index);
  return close_cycle(forest_from_tree(g, tree), e.source, e.target, {edge_index, true});
}

CycleConsistency cycle_consistency_oracle(const Graph& g, CycleMode mode, double angle_tol) {
  return mode == CycleMode::kBasis ? check_basis(g, angle_tol) : check_enumerate(g, angle_tol);
}

}  // namespace cwg
