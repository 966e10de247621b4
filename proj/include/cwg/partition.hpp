#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cwg/angle.hpp"
#include "cwg/balance.hpp"

namespace cwg {

/// Grouping of nodes into partites of equal signature.
struct Partition {
  /// partite_of[v] is the partite index of node v. Partites are numbered in order of
  /// their lowest node.
  std::vector<std::size_t> partite_of;
  /// Representative signature of each partite: the signature of its lowest node.
  std::vector<double> partite_signature;

  std::size_t partite_count() const noexcept { return partite_signature.size(); }
  std::vector<std::vector<std::size_t>> members() const;
};

/// Clusters signatures on the circle, splitting wherever consecutive sorted angles are
/// more than angle_tol apart (the gap across ±pi included).
///
/// Throws PartitionError when the clustering is ambiguous: a cluster wider than
/// 2 * angle_tol, or two representatives closer than 2 * angle_tol.
Partition extract_partition(std::span<const double> thetas,
                            double angle_tol = kDefaultAngleTolerance);
Partition extract_partition(const SignatureAssignment& s,
                            double angle_tol = kDefaultAngleTolerance);

}  // namespace cwg
