#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cwg/graph.hpp"

namespace cwg {

enum class ProtocolKind { kDiscreteTime, kContinuousTime, kLti };

std::string to_string(ProtocolKind kind);

struct TrajectoryMetadata {
  ProtocolKind kind = ProtocolKind::kContinuousTime;
  std::string graph_id;
  /// kappa for discrete-time runs, flattened K for LTI runs, empty otherwise.
  std::vector<double> gains;
  /// State dimension of each agent (1 except for LTI runs).
  std::size_t block_size = 1;
  /// Non-fatal diagnostics, e.g. a kappa outside the stability bound.
  std::vector<std::string> warnings;
};

/// Time-stamped states. Discrete-time runs store the step index as the time.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  TrajectoryMetadata metadata;

  std::size_t size() const noexcept { return times.size(); }
  const Eigen::VectorXcd& final_state() const { return states.back(); }
};

/// x(k+1) = (I - diag(kappa) L) x(k) for `steps` steps.
///
/// Every `stride`-th step is recorded, plus the last one. A kappa_i above 1/d_i only
/// adds a warning to the metadata. Throws DimensionError on size mismatch and
/// SimulationError if the state stops being finite.
Trajectory simulate_dt(const Graph& g, const Eigen::VectorXcd& x0, const Eigen::VectorXd& kappa,
                       std::size_t steps, std::size_t stride = 1);

enum class IntegrationScheme { kExact, kRk4 };

/// Integrates dx/dt = -L x, sampling at multiples of dt (the last sample lands on t_final).
///
/// kExact propagates with e^{-L dt}; kRk4 takes classical Runge-Kutta steps of size dt.
Trajectory simulate_ct(const Graph& g, const Eigen::VectorXcd& x0, double t_final, double dt,
                       IntegrationScheme scheme = IntegrationScheme::kExact,
                       std::size_t stride = 1);

/// kappa_i = 1 / (2 d_i); nodes without in-edges get 1.
Eigen::VectorXd default_kappa(const Graph& g);

/// min(10^6, ceil(10 N / min_i kappa_i d_i)) over nodes with d_i > 0.
std::size_t default_dt_steps(const Graph& g, const Eigen::VectorXd& kappa);

/// Smallest real part among the nonzero eigenvalues of D - [|a_ij|]; empty if there is none.
std::optional<double> spectral_gap(const Graph& g);

/// Steps after which the slowest nonconsensus mode of I - kappa L̂ has shrunk by e^-50,
/// capped at 10^6. Empty when the spectrum gives no rate.
std::optional<std::size_t> spectral_dt_steps(const Graph& g, const Eigen::VectorXd& kappa);

/// 50 / spectral_gap(g), or `fallback` when no gap is available.
double ct_horizon(const Graph& g, double fallback);

/// Left null vector w of D - [|a_ij|] with sum(w) = 1.
/// Throws ConnectivityError if the null space is not one-dimensional.
Eigen::VectorXd consensus_weights(const Graph& g);

/// Left null vector of diag(kappa) (D - [|a_ij|]) with sum 1, which weighs the
/// discrete-time limit. Equals consensus_weights(g) when kappa is uniform.
Eigen::VectorXd consensus_weights(const Graph& g, const Eigen::VectorXd& kappa);

/// c * zeta with c = w^T D_zeta^-1 x0, the continuous-time limit on a connected balanced graph.
/// Throws ConnectivityError / BalanceError when g is disconnected or zeta does not fit it.
Eigen::VectorXcd predict_limit(const Graph& g, const Eigen::VectorXcd& zeta,
                               const Eigen::VectorXcd& x0);

/// Discrete-time limit for gains kappa; w is taken from consensus_weights(g, kappa).
Eigen::VectorXcd predict_limit(const Graph& g, const Eigen::VectorXcd& zeta,
                               const Eigen::VectorXcd& x0, const Eigen::VectorXd& kappa);

/// c = w^T D_zeta^-1 x0 alone.
std::complex<double> consensus_constant(const Graph& g, const Eigen::VectorXcd& zeta,
                                        const Eigen::VectorXcd& x0);
std::complex<double> consensus_constant(const Graph& g, const Eigen::VectorXcd& zeta,
                                        const Eigen::VectorXcd& x0, const Eigen::VectorXd& kappa);

enum class OutcomeKind { kMultiPartite, kTrivial, kNone };

std::string to_string(OutcomeKind kind);

struct ConsensusVerdict {
  OutcomeKind kind = OutcomeKind::kNone;
  std::complex<double> c_estimate;
  /// Per-node max deviation from the fitted consensus state at the final sample.
  std::vector<double> residuals;
  /// Largest successive-sample change within the window.
  double max_window_change = 0.0;
  /// Fitted per-agent reference state (block_size entries); c_estimate is its first entry.
  Eigen::VectorXcd reference;

  double max_residual() const;
};

/// Classifies the tail of a trajectory.
///
/// Scalar runs must be stationary over the final `window` samples (successive changes
/// <= tol). With zeta, c is fitted by least squares and the run is multi-partite when
/// every residual |x_i - c zeta_i| <= tol and |c| > tol, trivial when |c| <= tol.
/// Without zeta, a final state of norm <= tol is trivial. Anything else is kNone.
///
/// LTI runs (block_size > 1) test blockwise proportionality x_i ≈ zeta_i x_ref instead,
/// with residuals divided by max(1, |x_ref|), and do not require stationarity.
/// Throws DimensionError if window exceeds the trajectory length or is zero.
ConsensusVerdict classify_outcome(const Trajectory& traj,
                                  const std::optional<Eigen::VectorXcd>& zeta, double tol,
                                  std::size_t window);

}  // namespace cwg
