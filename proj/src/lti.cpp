#include "cwg/lti.hpp"

#include <cmath>

#include <Eigen/QR>

#include "cwg/balance.hpp"
#include "cwg/laplacian.hpp"
#include "cwg/linalg.hpp"

namespace cwg {

LtiAgentModel::LtiAgentModel(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd k)
    : a_(std::move(a)), b_(std::move(b)), k_(std::move(k)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) throw DimensionError("A must be square and non-empty");
  if (b_.rows() != a_.rows() || b_.cols() == 0) throw DimensionError("B must have n rows and m > 0 columns");
  if (k_.rows() != b_.cols() || k_.cols() != a_.rows()) throw DimensionError("K must be m x n");
  if (!a_.allFinite() || !b_.allFinite() || !k_.allFinite()) {
    throw DimensionError("model matrices must be finite");
  }
}

std::size_t LtiAgentModel::controllability_rank() const {
  const Eigen::Index n = a_.rows();
  const Eigen::Index m = b_.cols();
  Eigen::MatrixXd ctrb(n, n * m);
  Eigen::MatrixXd block = b_;
  for (Eigen::Index p = 0; p < n; ++p) {
    ctrb.middleCols(p * m, m) = block;
    block = a_ * block;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ctrb);
  return static_cast<std::size_t>(qr.rank());
}

Eigen::MatrixXcd closed_loop_matrix(const Eigen::MatrixXcd& lap, const LtiAgentModel& m) {
  const Eigen::Index agents = lap.rows();
  const Eigen::Index n = static_cast<Eigen::Index>(m.state_dim());
  const Eigen::MatrixXcd a = m.a().cast<std::complex<double>>();
  const Eigen::MatrixXcd bk = (m.b() * m.k()).cast<std::complex<double>>();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(agents * n, agents * n);
  for (Eigen::Index i = 0; i < agents; ++i) {
    out.block(i * n, i * n, n, n) += a;
    for (Eigen::Index j = 0; j < agents; ++j) {
      if (lap(i, j) != 0.0) out.block(i * n, j * n, n, n) -= lap(i, j) * bk;
    }
  }
  return out;
}

Trajectory simulate_lti(const Graph& g, const LtiAgentModel& m, const Eigen::VectorXcd& x0,
                        double t_final, double dt, std::size_t stride) {
  const std::size_t size = g.node_count() * m.state_dim();
  if (x0.size() != static_cast<Eigen::Index>(size)) {
    throw DimensionError("initial state has " + std::to_string(x0.size()) +
                         " entries, expected N*n = " + std::to_string(size));
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw SimulationError("dt must be positive and finite");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw SimulationError("t_final must be non-negative and finite");
  }
  if (stride == 0) throw SimulationError("stride must be at least 1");

  Trajectory traj;
  traj.metadata.kind = ProtocolKind::kLti;
  traj.metadata.block_size = m.state_dim();
  traj.metadata.gains.assign(m.k().data(), m.k().data() + m.k().size());
  if (!m.controllable()) {
    traj.metadata.warnings.push_back("(A, B) is not controllable: rank " +
                                     std::to_string(m.controllability_rank()) + " < " +
                                     std::to_string(m.state_dim()));
  }
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  if (t_final == 0.0) return traj;

  const std::size_t intervals = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  const double last_dt = t_final - static_cast<double>(intervals - 1) * dt;
  const Eigen::MatrixXcd loop = closed_loop_matrix(laplacian(g), m);
  const Eigen::MatrixXcd step = matrix_exponential(loop * dt);
  const Eigen::MatrixXcd last_step =
      std::abs(last_dt - dt) <= 1e-12 * dt ? step : matrix_exponential(loop * last_dt);
  Eigen::VectorXcd x = x0;
  for (std::size_t k = 1; k <= intervals; ++k) {
    x = (k == intervals ? last_step : step) * x;
    if (!x.allFinite()) throw SimulationError("state became non-finite");
    if (k % stride == 0 || k == intervals) {
      traj.times.push_back(k == intervals ? t_final : static_cast<double>(k) * dt);
      traj.states.push_back(x);
    }
  }
  return traj;
}

ClosedLoopSpectra closed_loop_spectrum(const Graph& g, const LtiAgentModel& m,
                                       double angle_tol) {
  if (!balanced_signatures(g, angle_tol)) {
    throw BalanceError("closed-loop comparison needs a structurally balanced graph");
  }
  ClosedLoopSpectra s;
  s.original = sorted_eigenvalues(closed_loop_matrix(laplacian(g), m));
  s.gauged = sorted_eigenvalues(
      closed_loop_matrix(nonnegative_laplacian(g).cast<std::complex<double>>(), m));
  s.distance = assignment_distance(s.original, s.gauged);
  return s;
}

}  // namespace cwg
