#include "cwg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cwg/angle.hpp"
#include "cwg/connectivity.hpp"

namespace cwg {

double PortableRng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::size_t PortableRng::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("index range must be non-empty");
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % range);
}

std::vector<double> four_partite_signatures() { return {-kPi / 2, 0.0, kPi / 2, kPi}; }

void GeneratorConfig::validate() const {
  if (node_count == 0) throw std::invalid_argument("node_count must be positive");
  if (!(edge_probability > 0.0 && edge_probability <= 1.0)) {
    throw std::invalid_argument("edge_probability must lie in (0, 1]");
  }
  if (signature_set.empty()) throw std::invalid_argument("signature_set must not be empty");
  for (std::size_t a = 0; a < signature_set.size(); ++a) {
    const double s = signature_set[a];
    if (!(s > -kPi && s <= kPi)) throw std::invalid_argument("signatures must lie in (-pi, pi]");
    for (std::size_t b = 0; b < a; ++b) {
      if (signature_set[b] == s) throw std::invalid_argument("signatures must be distinct");
    }
  }
  if (!(modulus_lo > 0.0 && modulus_lo <= modulus_hi && std::isfinite(modulus_hi))) {
    throw std::invalid_argument("modulus range must satisfy 0 < lo <= hi");
  }
}

GeneratedGraph random_balanced_graph(const GeneratorConfig& cfg) {
  cfg.validate();
  PortableRng rng(cfg.seed);
  const std::size_t n = cfg.node_count;
  std::vector<double> signatures(n);
  for (std::size_t v = 0; v < n; ++v) {
    signatures[v] = cfg.signature_set[rng.index(cfg.signature_set.size())];
  }
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      if (rng.uniform01() >= cfg.edge_probability) continue;
      const double modulus = rng.uniform(cfg.modulus_lo, cfg.modulus_hi);
      edges.push_back({j, i, modulus, angle_difference(signatures[i], signatures[j])});
    }
  }
  Graph g = Graph::from_polar(n, std::move(edges));
  const bool connected = is_connected(g);
  return {std::move(g), std::move(signatures), connected};
}

GeneratedGraph k_partite_example(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("need at least one partite");
  if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; })) {
    throw std::invalid_argument("partite sizes must be positive");
  }
  const double k = static_cast<double>(sizes.size());
  std::vector<double> signatures;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // [first, last] per partite
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    ranges.emplace_back(signatures.size(), signatures.size() + sizes[p] - 1);
    signatures.insert(signatures.end(), sizes[p],
                      wrap_angle(kTwoPi * static_cast<double>(p) / k));
  }
  const std::size_t n = signatures.size();

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n > 1) {
    for (std::size_t v = 0; v < n; ++v) pairs.emplace_back(v, (v + 1) % n);
  }
  for (const auto& [first, last] : ranges) {
    for (std::size_t v = last; v > first; --v) pairs.emplace_back(v, v - 1);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<Edge> edges;
  for (const auto& [j, i] : pairs) {
    edges.push_back({j, i, 1.0, angle_difference(signatures[i], signatures[j])});
  }
  Graph g = Graph::from_polar(n, std::move(edges));
  const bool connected = is_connected(g);
  return {std::move(g), std::move(signatures), connected};
}

Graph directed_cycle_example(const std::vector<double>& arguments,
                             const std::vector<double>& moduli) {
  if (arguments.size() != moduli.size()) {
    throw std::invalid_argument("arguments and moduli differ in length");
  }
  if (arguments.size() < 2) throw std::invalid_argument("a cycle needs at least two nodes");
  const std::size_t n = arguments.size();
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, moduli[v], arguments[v]});
  return Graph::from_polar(n, std::move(edges));
}

Graph weak_cycle_example(double theta12, double theta13, double theta32) {
  return Graph::from_polar(3, {{1, 0, 1.0, theta12}, {2, 0, 1.0, theta13}, {1, 2, 1.0, theta32}});
}

Graph perturb_unbalance(const Graph& g, std::size_t source, std::size_t target, double delta) {
  const auto k = g.find_edge(source, target);
  if (!k) {
    throw std::invalid_argument("no edge " + std::to_string(source + 1) + " -> " +
                                std::to_string(target + 1) + " to perturb");
  }
  const double shift = wrap_angle(delta);
  if (shift == 0.0) return g;
  return with_arguments(g, [&](const Edge& e) {
    return e.source == source && e.target == target ? e.argument + shift : e.argument;
  });
}

bool edge_on_weak_cycle(const Graph& g, std::size_t edge_index) {
  const Edge& removed = g.edge(edge_index);
  // Is there still an undirected path source ~ target without this edge?
  std::vector<bool> seen(g.node_count(), false);
  std::vector<std::size_t> stack{removed.source};
  seen[removed.source] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v == removed.target) return true;
    auto visit = [&](std::size_t k, std::size_t w) {
      if (k == edge_index || seen[w]) return;
      seen[w] = true;
      stack.push_back(w);
    };
    for (std::size_t k : g.out_edges(v)) visit(k, g.edge(k).target);
    for (std::size_t k : g.in_edges(v)) visit(k, g.edge(k).source);
  }
  return false;
}

}  // namespace cwg
