#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cwg/graph.hpp"

namespace cwg {

/// Parameters of the random balanced graph model.
struct GeneratorConfig {
  std::size_t node_count = 150;
  double edge_probability = 0.1;
  /// Candidate signatures, pairwise distinct, in (-pi, pi].
  std::vector<double> signature_set;
  double modulus_lo = 1.0;
  double modulus_hi = 5.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an invalid configuration.
  void validate() const;
};

/// {-pi/2, 0, pi/2, pi}.
std::vector<double> four_partite_signatures();

/// A generated graph plus the signatures it was built from.
struct GeneratedGraph {
  Graph graph;
  std::vector<double> signatures;
  bool connected = false;
};

/// Portable random stream: std::mt19937_64 with explicit conversions, so that a seed
/// produces the same numbers under any standard library.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n) by rejection.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Signatures first (one draw per node, in index order), then every ordered pair (j, i),
/// j != i, in lexicographic order: one draw for the edge test and, when the edge exists,
/// one draw for its modulus. The edge j -> i gets argument theta_i - theta_j.
GeneratedGraph random_balanced_graph(const GeneratorConfig& cfg);

/// Balanced exemplar with k = sizes.size() partites of the given sizes.
///
/// Nodes are numbered partite by partite; partite p has signature wrap(2 pi p / k).
/// Edges: a ring 0 -> 1 -> ... -> N-1 -> 0, plus a backward chain inside each partite.
/// Unit moduli. Throws std::invalid_argument for empty or zero sizes.
GeneratedGraph k_partite_example(const std::vector<std::size_t>& sizes);

/// Nodes 0..L-1 with edges i -> i+1 (mod L). Throws std::invalid_argument on
/// length mismatch or L < 2.
Graph directed_cycle_example(const std::vector<double>& arguments,
                             const std::vector<double>& moduli);

/// Three nodes with unit-modulus edges 2 -> 1 (theta12), 3 -> 1 (theta13), 2 -> 3 (theta32),
/// in 1-based naming.
Graph weak_cycle_example(double theta12, double theta13, double theta32);

/// Shifts the argument of edge source -> target by delta. Throws std::invalid_argument
/// when the edge does not exist.
Graph perturb_unbalance(const Graph& g, std::size_t source, std::size_t target, double delta);

/// True when the edge lies on some weak cycle (it is not a bridge of the underlying
/// undirected multigraph).
bool edge_on_weak_cycle(const Graph& g, std::size_t edge_index);

}  // namespace cwg
