#include "cwg/linalg.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "cwg/errors.hpp"

namespace cwg {

namespace {

/// Kuhn's augmenting-path matching restricted to pairs within `limit`.
class ThresholdMatcher {
 public:
  explicit ThresholdMatcher(const std::vector<std::vector<double>>& dist) : dist_(dist) {}

  bool perfect(double limit) {
    const std::size_t n = dist_.size();
    limit_ = limit;
    match_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      visited_.assign(n, false);
      if (!augment(a)) return false;
    }
    return true;
  }

 private:
  bool augment(std::size_t a) {
    const std::size_t n = dist_.size();
    for (std::size_t b = 0; b < n; ++b) {
      if (visited_[b] || dist_[a][b] > limit_) continue;
      visited_[b] = true;
      if (match_[b] == n || augment(match_[b])) {
        match_[b] = a;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<double>>& dist_;
  double limit_ = 0.0;
  std::vector<std::size_t> match_;
  std::vector<bool> visited_;
};

}  // namespace

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m) { return m.exp(); }

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue computation did not converge");
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  std::vector<std::complex<double>> values(ev.data(), ev.data() + ev.size());
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return values;
}

double assignment_distance(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) {
    throw DimensionError("multisets differ in size: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  std::vector<double> candidates;
  candidates.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = std::abs(a[i] - b[j]);
      candidates.push_back(dist[i][j]);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  ThresholdMatcher matcher(dist);
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matcher.perfect(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace cwg
