#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cwg {

/// e^M via Padé scaling-and-squaring.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m);

/// Eigenvalues sorted lexicographically by (real, imag).
std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXcd& m);

/// Optimal-assignment (bottleneck) distance between two equally sized multisets:
/// the smallest d such that a perfect matching pairs every element with a partner
/// within distance d. Throws DimensionError on size mismatch.
double assignment_distance(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b);

}  // namespace cwg
