#include "cwg/laplacian.hpp"

#include "cwg/errors.hpp"

namespace cwg {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

Eigen::MatrixXcd adjacency_matrix(const Graph& g) {
  const auto n = idx(g.node_count());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (const Edge& e : g.edges()) a(idx(e.target), idx(e.source)) = e.weight();
  return a;
}

Eigen::VectorXd in_degrees(const Graph& g) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(idx(g.node_count()));
  for (const Edge& e : g.edges()) d(idx(e.target)) += e.modulus;
  return d;
}

Eigen::MatrixXcd laplacian(const Graph& g) {
  Eigen::MatrixXcd l = -adjacency_matrix(g);
  l.diagonal() = in_degrees(g).cast<std::complex<double>>();
  return l;
}

Eigen::MatrixXd nonnegative_laplacian(const Graph& g) {
  const auto n = idx(g.node_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) l(idx(e.target), idx(e.source)) = -e.modulus;
  l.diagonal() = in_degrees(g);
  return l;
}

Eigen::VectorXcd apply_laplacian(const Graph& g, const Eigen::VectorXcd& x) {
  if (x.size() != idx(g.node_count())) {
    throw DimensionError("state has " + std::to_string(x.size()) + " entries, graph has " +
                         std::to_string(g.node_count()) + " nodes");
  }
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
  for (const Edge& e : g.edges()) {
    const auto i = idx(e.target);
    y(i) += e.modulus * x(i) - e.weight() * x(idx(e.source));
  }
  return y;
}

Eigen::VectorXcd laplacian_row_sums(const Graph& g) {
  const Eigen::VectorXd d = in_degrees(g);
  Eigen::VectorXcd s = d.cast<std::complex<double>>();
  for (const Edge& e : g.edges()) s(idx(e.target)) -= e.weight();
  return s;
}

}  // namespace cwg
