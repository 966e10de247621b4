#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cwg/consensus.hpp"
#include "cwg/graph.hpp"

namespace cwg {

/// Identical linear agents dx_i/dt = A x_i + B u_i driven by u_i = -K sum_j (|a_ij| x_i - a_ij x_j).
class LtiAgentModel {
 public:
  /// Throws DimensionError unless A is n×n, B is n×m and K is m×n.
  LtiAgentModel(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd k);

  const Eigen::MatrixXd& a() const noexcept { return a_; }
  const Eigen::MatrixXd& b() const noexcept { return b_; }
  const Eigen::MatrixXd& k() const noexcept { return k_; }
  std::size_t state_dim() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(b_.cols()); }

  /// Rank of [B, AB, ..., A^{n-1}B]. Controllable iff it equals state_dim().
  std::size_t controllability_rank() const;
  bool controllable() const { return controllability_rank() == state_dim(); }

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
  Eigen::MatrixXd k_;
};

/// I_N ⊗ A - lap ⊗ BK for any N×N coupling matrix `lap`.
Eigen::MatrixXcd closed_loop_matrix(const Eigen::MatrixXcd& lap, const LtiAgentModel& m);

/// Integrates the stacked closed loop with e^{M dt}. x0 is node-major (agent i owns
/// entries [i n, (i+1) n)).
Trajectory simulate_lti(const Graph& g, const LtiAgentModel& m, const Eigen::VectorXcd& x0,
                        double t_final, double dt, std::size_t stride = 1);

struct ClosedLoopSpectra {
  /// Eigenvalues of I ⊗ A - L ⊗ BK, sorted by (re, im).
  std::vector<std::complex<double>> original;
  /// Eigenvalues of I ⊗ A - L̂ ⊗ BK with L̂ = D - [|a_ij|].
  std::vector<std::complex<double>> gauged;
  /// assignment_distance(original, gauged).
  double distance = 0.0;
};

/// Throws BalanceError if g is not structurally balanced.
ClosedLoopSpectra closed_loop_spectrum(const Graph& g, const LtiAgentModel& m,
                                       double angle_tol = 1e-9);

}  // namespace cwg
