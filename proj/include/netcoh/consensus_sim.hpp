#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "netcoh/errors.hpp"
#include "netcoh/graph.hpp"

namespace netcoh {

enum class DynamicsOrder { first, second };

/// Noisy consensus system over a connected graph.
///
/// First order:  dx = -beta L x dt + dw            (one noise channel/node)
/// Second order: dx1 = x2 dt
///               dx2 = (-beta L x1 - beta L x2) dt + dw
/// The measured output is the deviation from the network average,
/// y = J x (or J x1), with J = I - (1/N) 1 1^T.
struct LtiConsensusSystem {
  DynamicsOrder order = DynamicsOrder::first;
  double beta = 1.0;
  Eigen::MatrixXd laplacian;
};

LtiConsensusSystem make_system(const Graph& g, DynamicsOrder order,
                               double beta);

/// Solve the continuous Lyapunov equation A X + X A^T + Q = 0 for stable A
/// (all eigenvalues in the open left half-plane) by complex Schur reduction
/// and back-substitution.  Throws InvariantError when A is not stable.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& Q);

/// Steady-state output variance (1/N) tr(J Sigma J) of the consensus system,
/// by solving the covariance Lyapunov equation on the subspace orthogonal to
/// the consensus mode(s).  The deflated modes are unobservable through J, so
/// the restricted solve is the full answer.  Independent oracle for the
/// spectral formulas S/(2 beta N) and S2/(2 beta^2 N).
double lyapunov_h2(const LtiConsensusSystem& system);

/// Euler-Maruyama simulation settings.  Invariants: dt * beta * lambda_max
/// below 0.1 for stability margin; horizon at least 20 / (beta lambda_2).
struct SimConfig {
  double dt = 0.0;
  double burn_in = 0.0;
  double horizon = 0.0;
  int replicates = 32;
  std::uint64_t seed = 12345;
  double noise_scale = 1.0;  // 0 disables noise (deterministic decay)
};

/// Defaults derived from the spectrum: dt = 0.02 / (beta lambda_max),
/// burn_in = 10 / (beta lambda_2), horizon = 60 / (beta lambda_2).
SimConfig default_sim_config(const LtiConsensusSystem& system,
                             std::uint64_t seed = 12345);

struct SimEstimate {
  double h_hat = 0.0;
  double std_err = 0.0;  // across replicates
  int samples = 0;       // replicate count
};

/// Monte-Carlo estimate of the steady-state output variance: integrates
/// each replicate with independent noise, discards the burn-in, and
/// time-averages (1/N) |J x|^2.  Replicate r draws from an RNG stream
/// derived from (seed, r) by a counter-based split, and replicate results
/// are merged in index order - so the parallel and serial variants are
/// bit-identical, and a fixed seed reproduces the estimate exactly.
SimEstimate simulate_variance(const LtiConsensusSystem& system,
                              const SimConfig& config);
SimEstimate simulate_variance_serial(const LtiConsensusSystem& system,
                                     const SimConfig& config);

}  // namespace netcoh
