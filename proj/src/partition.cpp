#include "cwg/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cwg/errors.hpp"

namespace cwg {

std::vector<std::vector<std::size_t>> Partition::members() const {
  std::vector<std::vector<std::size_t>> m(partite_count());
  for (std::size_t v = 0; v < partite_of.size(); ++v) m[partite_of[v]].push_back(v);
  return m;
}

Partition extract_partition(std::span<const double> thetas, double angle_tol) {
  const std::size_t n = thetas.size();
  Partition p;
  if (n == 0) return p;

  std::vector<double> wrapped(n);
  for (std::size_t v = 0; v < n; ++v) wrapped[v] = wrap_angle(thetas[v]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return wrapped[a] < wrapped[b]; });

  // Runs of the sorted circle separated by gaps wider than the tolerance.
  std::vector<std::size_t> cluster_of(n, 0);
  std::vector<double> width{0.0};
  for (std::size_t k = 1; k < n; ++k) {
    const double gap = wrapped[order[k]] - wrapped[order[k - 1]];
    if (gap > angle_tol) {
      width.push_back(0.0);
    } else {
      width.back() += gap;
    }
    cluster_of[order[k]] = width.size() - 1;
  }
  const double wrap_gap = wrapped[order.front()] + kTwoPi - wrapped[order.back()];
  if (width.size() > 1 && wrap_gap <= angle_tol) {
    const std::size_t last = width.size() - 1;
    for (auto& c : cluster_of) {
      if (c == last) c = 0;
    }
    width.front() += width.back() + wrap_gap;
    width.pop_back();
  }

  for (std::size_t c = 0; c < width.size(); ++c) {
    if (width[c] > 2 * angle_tol) {
      throw PartitionError("signature cluster spans " + std::to_string(width[c]) +
                           " rad, wider than twice the tolerance");
    }
  }

  std::vector<std::size_t> label(width.size(), std::numeric_limits<std::size_t>::max());
  p.partite_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t& l = label[cluster_of[v]];
    if (l == std::numeric_limits<std::size_t>::max()) {
      l = p.partite_signature.size();
      p.partite_signature.push_back(wrapped[v]);
    }
    p.partite_of[v] = l;
  }

  for (std::size_t a = 0; a < p.partite_count(); ++a) {
    for (std::size_t b = a + 1; b < p.partite_count(); ++b) {
      if (std::abs(angle_difference(p.partite_signature[a], p.partite_signature[b])) <
          2 * angle_tol) {
        throw PartitionError("partite signatures " + std::to_string(p.partite_signature[a]) +
                             " and " + std::to_string(p.partite_signature[b]) +
                             " are closer than twice the tolerance");
      }
    }
  }
  return p;
}

Partition extract_partition(const SignatureAssignment& s, double angle_tol) {
  return extract_partition(std::span<const double>(s.thetas), angle_tol);
}

}  // namespace cwg
