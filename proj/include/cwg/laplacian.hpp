#pragma once

#include <Eigen/Dense>

#include "cwg/graph.hpp"

namespace cwg {

/// Dense adjacency matrix A with A(i, j) = weight of edge j -> i.
Eigen::MatrixXcd adjacency_matrix(const Graph& g);

/// d_i = sum of |a_ij| over edges entering node i.
Eigen::VectorXd in_degrees(const Graph& g);

/// L = D - A.
Eigen::MatrixXcd laplacian(const Graph& g);

/// D - [|a_ij|]: the Laplacian of the graph with every weight replaced by its modulus.
Eigen::MatrixXd nonnegative_laplacian(const Graph& g);

/// L * x computed straight from the edge list, without forming L.
Eigen::VectorXcd apply_laplacian(const Graph& g, const Eigen::VectorXcd& x);

/// Row sums of L, i.e. d_i - sum_j a_ij, accumulated in edge order.
Eigen::VectorXcd laplacian_row_sums(const Graph& g);

}  // namespace cwg
