#include "cwg/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace cwg {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

/// BFS over out-edges from `root`; fills `tree` and marks `seen`.
void grow_tree(const Graph& g, std::size_t root, SpanningTree& tree, std::vector<bool>& seen) {
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t k : g.out_edges(v)) {
      const std::size_t w = g.edge(k).target;
      if (seen[w]) continue;
      seen[w] = true;
      tree.edges.push_back({v, w, k, false});
      queue.push_back(w);
    }
  }
}

}  // namespace

std::vector<std::size_t> SccDecomposition::source_components() const {
  std::vector<bool> has_in(components.size(), false);
  for (const auto& [from, to] : condensation_edges) has_in[to] = true;
  std::vector<std::size_t> sources;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (!has_in[c]) sources.push_back(c);
  }
  return sources;
}

SccDecomposition strongly_connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), raw_comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  std::size_t raw_count = 0;

  // Explicit DFS frames: (node, position in its out-edge list).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t start = 0; start < n; ++start) {
    if (index[start] != kUnset) continue;
    frames.emplace_back(start, 0);
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto out = g.out_edges(v);
      if (pos < out.size()) {
        const std::size_t w = g.edge(out[pos++]).target;
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw_comp[w] = raw_count;
        } while (w != done);
        ++raw_count;
      }
    }
  }

  // Renumber components by their lowest member.
  std::vector<std::size_t> renumber(raw_count, kUnset);
  SccDecomposition scc;
  scc.component_of.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t& c = renumber[raw_comp[v]];
    if (c == kUnset) {
      c = scc.components.size();
      scc.components.emplace_back();
    }
    scc.component_of[v] = c;
    scc.components[c].push_back(v);
  }
  for (const Edge& e : g.edges()) {
    const std::size_t a = scc.component_of[e.source];
    const std::size_t b = scc.component_of[e.target];
    if (a != b) scc.condensation_edges.emplace_back(a, b);
  }
  std::sort(scc.condensation_edges.begin(), scc.condensation_edges.end());
  scc.condensation_edges.erase(
      std::unique(scc.condensation_edges.begin(), scc.condensation_edges.end()),
      scc.condensation_edges.end());
  return scc;
}

std::vector<std::optional<std::size_t>> SpanningTree::parent_slots(std::size_t node_count) const {
  std::vector<std::optional<std::size_t>> slots(node_count);
  for (std::size_t k = 0; k < edges.size(); ++k) slots.at(edges[k].child) = k;
  return slots;
}

bool SpanningTree::directed() const noexcept {
  return std::none_of(edges.begin(), edges.end(), [](const TreeEdge& e) { return e.reversed; });
}

void SpanningTree::validate(const Graph& g, bool allow_weak) const {
  const std::size_t n = g.node_count();
  if (root >= n) throw Error("spanning tree root is not a node of the graph");
  if (edges.size() + 1 != n) {
    throw Error("spanning tree has " + std::to_string(edges.size()) + " edges, expected " +
                std::to_string(n - 1));
  }
  std::vector<bool> placed(n, false);
  placed[root] = true;
  for (const TreeEdge& t : edges) {
    if (t.edge_index >= g.edge_count()) throw Error("spanning tree edge is not in the graph");
    const Edge& e = g.edge(t.edge_index);
    const bool matches = t.reversed ? (e.source == t.child && e.target == t.parent)
                                    : (e.source == t.parent && e.target == t.child);
    if (!matches) throw Error("spanning tree edge does not match the graph edge it names");
    if (t.reversed && !allow_weak) throw Error("spanning tree uses an edge against its direction");
    if (!placed[t.parent]) throw Error("spanning tree edges are not in root-to-leaf order");
    if (placed[t.child]) throw Error("spanning tree reaches a node twice");
    placed[t.child] = true;
  }
}

TreeSearch find_spanning_tree(const Graph& g) {
  const SccDecomposition scc = strongly_connected_components(g);
  const std::vector<std::size_t> sources = scc.source_components();

  // Components are numbered by lowest member, so the first source holds the lowest
  // node among all source components.
  SpanningTree tree;
  tree.root = scc.components[sources.front()].front();
  std::vector<bool> seen(g.node_count(), false);
  grow_tree(g, tree.root, tree, seen);

  TreeSearch result;
  if (sources.size() == 1) {
    result.tree = std::move(tree);
    return result;
  }
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!seen[v]) result.unreachable.push_back(v);
  }
  return result;
}

bool is_connected(const Graph& g) { return find_spanning_tree(g).connected(); }

SpanningTree weak_spanning_tree(const Graph& g) {
  SpanningTree tree;
  tree.root = 0;
  std::vector<bool> seen(g.node_count(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    // Out-edges first, then in-edges, each in sorted order.
    for (std::size_t k : g.out_edges(v)) {
      const std::size_t w = g.edge(k).target;
      if (seen[w]) continue;
      seen[w] = true;
      tree.edges.push_back({v, w, k, false});
      queue.push_back(w);
    }
    for (std::size_t k : g.in_edges(v)) {
      const std::size_t w = g.edge(k).source;
      if (seen[w]) continue;
      seen[w] = true;
      tree.edges.push_back({v, w, k, true});
      queue.push_back(w);
    }
  }
  if (tree.edges.size() + 1 != g.node_count()) {
    throw ConnectivityError("graph is not weakly connected");
  }
  return tree;
}

std::vector<std::vector<std::size_t>> weak_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : g.edges()) {
    const std::size_t a = find(e.source), b = find(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> slot(n, kUnset);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = find(v);
    if (slot[r] == kUnset) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(v);
  }
  return comps;
}

}  // namespace cwg
