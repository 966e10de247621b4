#include "cwg/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/QR>

#include "cwg/balance.hpp"
#include "cwg/connectivity.hpp"
#include "cwg/laplacian.hpp"
#include "cwg/linalg.hpp"

namespace cwg {

namespace {

constexpr std::size_t kMaxDtSteps = 1'000'000;
constexpr double kHorizonDecay = 50.0;

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

void require_size(const Eigen::VectorXcd& x, std::size_t n, const char* what) {
  if (x.size() != idx(n)) {
    throw DimensionError(std::string(what) + " has " + std::to_string(x.size()) +
                         " entries, expected " + std::to_string(n));
  }
}

void require_finite(const Eigen::VectorXcd& x, double t) {
  if (!x.allFinite()) {
    std::ostringstream msg;
    msg << "state became non-finite at t = " << t << "; the step size is too large";
    throw SimulationError(msg.str());
  }
}

/// Sample schedule 0, dt, 2 dt, ..., t_final (the last interval may be shorter).
std::size_t interval_count(double t_final, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw SimulationError("dt must be positive and finite");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw SimulationError("t_final must be non-negative and finite");
  }
  if (t_final == 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
}

double sample_time(std::size_t k, std::size_t intervals, double t_final, double dt) {
  return k == intervals ? t_final : static_cast<double>(k) * dt;
}

bool keep_sample(std::size_t k, std::size_t last, std::size_t stride) {
  return k % stride == 0 || k == last;
}

void check_stride(std::size_t stride) {
  if (stride == 0) throw SimulationError("stride must be at least 1");
}

double zero_threshold(const Graph& g) {
  return 1e-9 * std::max(1.0, in_degrees(g).maxCoeff());
}

}  // namespace

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kDiscreteTime:
      return "dt";
    case ProtocolKind::kContinuousTime:
      return "ct";
    case ProtocolKind::kLti:
      return "lti";
  }
  return "unknown";
}

std::string to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kMultiPartite:
      return "multi-partite";
    case OutcomeKind::kTrivial:
      return "trivial";
    case OutcomeKind::kNone:
      return "none";
  }
  return "unknown";
}

Trajectory simulate_dt(const Graph& g, const Eigen::VectorXcd& x0, const Eigen::VectorXd& kappa,
                       std::size_t steps, std::size_t stride) {
  const std::size_t n = g.node_count();
  require_size(x0, n, "initial state");
  if (kappa.size() != idx(n)) {
    throw DimensionError("kappa has " + std::to_string(kappa.size()) + " entries, expected " +
                         std::to_string(n));
  }
  check_stride(stride);

  Trajectory traj;
  traj.metadata.kind = ProtocolKind::kDiscreteTime;
  traj.metadata.gains.assign(kappa.data(), kappa.data() + kappa.size());
  const Eigen::VectorXd d = in_degrees(g);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = kappa(idx(i));
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw SimulationError("kappa_" + std::to_string(i + 1) + " must be positive and finite");
    }
    if (d(idx(i)) > 0.0 && k * d(idx(i)) > 1.0 + 1e-12) {
      std::ostringstream msg;
      msg << "kappa_" << i + 1 << " = " << k << " exceeds 1/d_" << i + 1 << " = "
          << 1.0 / d(idx(i));
      traj.metadata.warnings.push_back(msg.str());
    }
  }

  const Eigen::VectorXcd kc = kappa.cast<std::complex<double>>();
  Eigen::VectorXcd x = x0;
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  for (std::size_t k = 1; k <= steps; ++k) {
    x -= kc.cwiseProduct(apply_laplacian(g, x));
    require_finite(x, static_cast<double>(k));
    if (keep_sample(k, steps, stride)) {
      traj.times.push_back(static_cast<double>(k));
      traj.states.push_back(x);
    }
  }
  return traj;
}

Trajectory simulate_ct(const Graph& g, const Eigen::VectorXcd& x0, double t_final, double dt,
                       IntegrationScheme scheme, std::size_t stride) {
  require_size(x0, g.node_count(), "initial state");
  check_stride(stride);
  const std::size_t intervals = interval_count(t_final, dt);

  Trajectory traj;
  traj.metadata.kind = ProtocolKind::kContinuousTime;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  if (intervals == 0) return traj;

  const double last_dt = t_final - static_cast<double>(intervals - 1) * dt;
  Eigen::VectorXcd x = x0;

  if (scheme == IntegrationScheme::kExact) {
    const Eigen::MatrixXcd minus_l = -laplacian(g);
    const Eigen::MatrixXcd step = matrix_exponential(minus_l * dt);
    const Eigen::MatrixXcd last_step =
        std::abs(last_dt - dt) <= 1e-12 * dt ? step : matrix_exponential(minus_l * last_dt);
    for (std::size_t k = 1; k <= intervals; ++k) {
      x = (k == intervals ? last_step : step) * x;
      if (keep_sample(k, intervals, stride)) {
        traj.times.push_back(sample_time(k, intervals, t_final, dt));
        traj.states.push_back(x);
      }
    }
    return traj;
  }

  auto f = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return -apply_laplacian(g, v); };
  for (std::size_t k = 1; k <= intervals; ++k) {
    const double h = k == intervals ? last_dt : dt;
    const Eigen::VectorXcd k1 = f(x);
    const Eigen::VectorXcd k2 = f(x + (h / 2) * k1);
    const Eigen::VectorXcd k3 = f(x + (h / 2) * k2);
    const Eigen::VectorXcd k4 = f(x + h * k3);
    x += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = sample_time(k, intervals, t_final, dt);
    require_finite(x, t);
    if (keep_sample(k, intervals, stride)) {
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
  }
  return traj;
}

Eigen::VectorXd default_kappa(const Graph& g) {
  const Eigen::VectorXd d = in_degrees(g);
  Eigen::VectorXd kappa(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) kappa(i) = d(i) > 0.0 ? 1.0 / (2.0 * d(i)) : 1.0;
  return kappa;
}

std::size_t default_dt_steps(const Graph& g, const Eigen::VectorXd& kappa) {
  const Eigen::VectorXd d = in_degrees(g);
  double slowest = 1.0;
  bool any = false;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) <= 0.0) continue;
    slowest = any ? std::min(slowest, kappa(i) * d(i)) : kappa(i) * d(i);
    any = true;
  }
  const double steps = std::ceil(10.0 * static_cast<double>(g.node_count()) / slowest);
  return steps >= static_cast<double>(kMaxDtSteps) ? kMaxDtSteps
                                                   : static_cast<std::size_t>(steps);
}

std::optional<double> spectral_gap(const Graph& g) {
  const auto ev = sorted_eigenvalues(nonnegative_laplacian(g).cast<std::complex<double>>());
  const double zero = zero_threshold(g);
  std::optional<double> gap;
  for (const auto& lambda : ev) {
    if (std::abs(lambda) <= zero) continue;
    gap = gap ? std::min(*gap, lambda.real()) : lambda.real();
  }
  if (gap && *gap <= 0.0) return std::nullopt;
  return gap;
}

std::optional<std::size_t> spectral_dt_steps(const Graph& g, const Eigen::VectorXd& kappa) {
  const auto n = idx(g.node_count());
  if (kappa.size() != n) throw DimensionError("kappa size does not match the graph");
  const Eigen::MatrixXd m =
      Eigen::MatrixXd::Identity(n, n) - kappa.asDiagonal() * nonnegative_laplacian(g);
  const double zero = 1e-9;
  double rho = 0.0;
  bool any = false;
  for (const auto& mu : sorted_eigenvalues(m.cast<std::complex<double>>())) {
    if (std::abs(mu - 1.0) <= zero) continue;
    rho = std::max(rho, std::abs(mu));
    any = true;
  }
  if (!any || rho >= 1.0 - 1e-12) return std::nullopt;
  if (rho == 0.0) return 1;
  const double steps = std::ceil(kHorizonDecay / -std::log(rho));
  return steps >= static_cast<double>(kMaxDtSteps) ? kMaxDtSteps
                                                   : static_cast<std::size_t>(steps);
}

double ct_horizon(const Graph& g, double fallback) {
  const auto gap = spectral_gap(g);
  return gap ? kHorizonDecay / *gap : fallback;
}

namespace {

/// Left null vector of m with unit sum.
Eigen::VectorXd left_null_vector(const Graph& g, const Eigen::MatrixXd& m) {
  if (!find_spanning_tree(g).connected()) throw ConnectivityError("graph has no spanning tree");
  const auto n = m.rows();
  Eigen::MatrixXd system(n + 1, n);
  system.topRows(n) = m.transpose();
  system.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
  if (qr.rank() != n) throw ConnectivityError("left null space of the Laplacian is not simple");
  return qr.solve(rhs);
}

std::complex<double> weighted_constant(const Eigen::VectorXcd& zeta, const Eigen::VectorXcd& x0,
                                       const Eigen::VectorXd& w) {
  std::complex<double> c = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) c += w(i) * std::conj(zeta(i)) * x0(i);
  return c;
}

void require_limit_inputs(const Graph& g, const Eigen::VectorXcd& zeta, const Eigen::VectorXcd& x0) {
  require_size(zeta, g.node_count(), "zeta");
  require_size(x0, g.node_count(), "initial state");
  gauge_transform(g, zeta);
}

}  // namespace

Eigen::VectorXd consensus_weights(const Graph& g) {
  return left_null_vector(g, nonnegative_laplacian(g));
}

Eigen::VectorXd consensus_weights(const Graph& g, const Eigen::VectorXd& kappa) {
  if (kappa.size() != idx(g.node_count())) throw DimensionError("kappa size does not match the graph");
  if (!(kappa.array() > 0.0).all()) throw SimulationError("kappa must be positive");
  return left_null_vector(g, kappa.asDiagonal() * nonnegative_laplacian(g));
}

std::complex<double> consensus_constant(const Graph& g, const Eigen::VectorXcd& zeta,
                                        const Eigen::VectorXcd& x0) {
  require_limit_inputs(g, zeta, x0);
  return weighted_constant(zeta, x0, consensus_weights(g));
}

std::complex<double> consensus_constant(const Graph& g, const Eigen::VectorXcd& zeta,
                                        const Eigen::VectorXcd& x0, const Eigen::VectorXd& kappa) {
  require_limit_inputs(g, zeta, x0);
  return weighted_constant(zeta, x0, consensus_weights(g, kappa));
}

Eigen::VectorXcd predict_limit(const Graph& g, const Eigen::VectorXcd& zeta,
                               const Eigen::VectorXcd& x0) {
  return consensus_constant(g, zeta, x0) * zeta;
}

Eigen::VectorXcd predict_limit(const Graph& g, const Eigen::VectorXcd& zeta,
                               const Eigen::VectorXcd& x0, const Eigen::VectorXd& kappa) {
  return consensus_constant(g, zeta, x0, kappa) * zeta;
}

double ConsensusVerdict::max_residual() const {
  double r = 0.0;
  for (double v : residuals) r = std::max(r, v);
  return r;
}

ConsensusVerdict classify_outcome(const Trajectory& traj,
                                  const std::optional<Eigen::VectorXcd>& zeta, double tol,
                                  std::size_t window) {
  if (window == 0 || window > traj.size()) {
    throw DimensionError("window of " + std::to_string(window) + " samples does not fit a " +
                         std::to_string(traj.size()) + "-sample trajectory");
  }
  const std::size_t block = std::max<std::size_t>(1, traj.metadata.block_size);
  const Eigen::VectorXcd& x = traj.final_state();
  if (x.size() % idx(block) != 0) throw DimensionError("state size is not a multiple of block");
  const std::size_t agents = static_cast<std::size_t>(x.size()) / block;
  if (zeta) require_size(*zeta, agents, "zeta");

  ConsensusVerdict v;
  for (std::size_t k = traj.size() - window + 1; k < traj.size(); ++k) {
    v.max_window_change = std::max(
        v.max_window_change, (traj.states[k] - traj.states[k - 1]).cwiseAbs().maxCoeff());
  }

  auto agent = [&](std::size_t i) { return x.segment(idx(i * block), idx(block)); };

  if (!zeta) {
    v.reference = Eigen::VectorXcd::Zero(idx(block));
    for (std::size_t i = 0; i < agents; ++i) v.residuals.push_back(agent(i).cwiseAbs().maxCoeff());
    const bool settled = block > 1 || v.max_window_change <= tol;
    v.kind = settled && v.max_residual() <= tol ? OutcomeKind::kTrivial : OutcomeKind::kNone;
    return v;
  }

  // Least-squares fit of x_i ≈ zeta_i r over r; zeta has unit-modulus entries.
  Eigen::VectorXcd r = Eigen::VectorXcd::Zero(idx(block));
  double weight = 0.0;
  for (std::size_t i = 0; i < agents; ++i) {
    const std::complex<double> z = (*zeta)(idx(i));
    r += std::conj(z) * agent(i);
    weight += std::norm(z);
  }
  r /= weight;
  v.reference = r;
  v.c_estimate = r(0);
  for (std::size_t i = 0; i < agents; ++i) {
    v.residuals.push_back((agent(i) - (*zeta)(idx(i)) * r).cwiseAbs().maxCoeff());
  }

  const double ref_size = r.cwiseAbs().maxCoeff();
  if (block == 1) {
    if (v.max_window_change > tol || v.max_residual() > tol) {
      v.kind = OutcomeKind::kNone;
    } else {
      v.kind = std::abs(v.c_estimate) <= tol ? OutcomeKind::kTrivial : OutcomeKind::kMultiPartite;
    }
    return v;
  }
  // Agent states may grow without bound (e.g. double integrators), so residuals are
  // measured relative to the reference state.
  for (double& res : v.residuals) res /= std::max(1.0, ref_size);
  if (v.max_residual() > tol) {
    v.kind = OutcomeKind::kNone;
  } else {
    v.kind = ref_size <= tol ? OutcomeKind::kTrivial : OutcomeKind::kMultiPartite;
  }
  return v;
}

}  // namespace cwg
