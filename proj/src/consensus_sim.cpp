#include "netcoh/consensus_sim.hpp"

#include <omp.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "netcoh/spectrum.hpp"

namespace netcoh {

namespace {

// Orthonormal basis of the subspace orthogonal to the all-ones vector
// (N x (N-1), Helmert-style columns).  V^T V = I and V^T 1 = 0.
Eigen::MatrixXd ones_complement_basis(int n) {
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) V(i, k - 1) = norm;
    V(k, k - 1) = -static_cast<double>(k) * norm;
  }
  return V;
}

// lambda_2 and lambda_max of the system Laplacian (dense solve; simulated
// systems are small).
std::pair<double, double> spectral_extremes(const Eigen::MatrixXd& L) {
  SpectrumSummary s = spectrum_summary(L);
  double lambda2 = 0.0;
  for (double lam : s.eigenvalues)
    if (lam > s.zero_tolerance) {
      lambda2 = lam;
      break;
    }
  return {lambda2, s.eigenvalues.back()};
}

// Counter-based stream split: replicate r of a master seed gets an
// independent, reproducible 64-bit seed regardless of evaluation order.
std::uint64_t replicate_seed(std::uint64_t master, int replicate) {
  std::uint64_t z = master + (static_cast<std::uint64_t>(replicate) + 1) *
                                 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double run_replicate(const LtiConsensusSystem& system, const SimConfig& cfg,
                     int replicate) {
  const auto& L = system.laplacian;
  const int n = static_cast<int>(L.rows());
  const std::int64_t burn_steps =
      static_cast<std::int64_t>(std::llround(cfg.burn_in / cfg.dt));
  const std::int64_t meas_steps =
      static_cast<std::int64_t>(std::llround(cfg.horizon / cfg.dt));
  const double sqrt_dt = std::sqrt(cfg.dt);

  std::mt19937_64 rng(replicate_seed(cfg.seed, replicate));
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw_noise = [&](Eigen::VectorXd& out) {
    for (int i = 0; i < n; ++i)
      out(i) = cfg.noise_scale * sqrt_dt * normal(rng);
  };

  const double overflow_guard = 1e12 * n;
  double acc = 0.0;
  Eigen::VectorXd noise(n);
  if (system.order == DynamicsOrder::first) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (std::int64_t step = 0; step < burn_steps + meas_steps; ++step) {
      draw_noise(noise);
      x += cfg.dt * (-system.beta * (L * x)) + noise;
      if (x.squaredNorm() > overflow_guard)
        throw InvariantError(
            "simulation diverged at step " + std::to_string(step) +
            "; reduce dt (stability needs dt * beta * lambda_max small)");
      if (step >= burn_steps) {
        const double mean = x.mean();
        acc += (x.array() - mean).matrix().squaredNorm();
      }
    }
  } else {
    Eigen::VectorXd x1 = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd x2 = Eigen::VectorXd::Zero(n);
    for (std::int64_t step = 0; step < burn_steps + meas_steps; ++step) {
      draw_noise(noise);
      // Drift from the state at the start of the step.
      Eigen::VectorXd accel = -system.beta * (L * (x1 + x2));
      x1 += cfg.dt * x2;
      x2 += cfg.dt * accel + noise;
      if (x1.squaredNorm() + x2.squaredNorm() > overflow_guard)
        throw InvariantError(
            "simulation diverged at step " + std::to_string(step) +
            "; reduce dt (stability needs dt * beta * lambda_max small)");
      if (step >= burn_steps) {
        const double mean = x1.mean();
        acc += (x1.array() - mean).matrix().squaredNorm();
      }
    }
  }
  return acc / (static_cast<double>(meas_steps) * n);
}

SimEstimate merge_replicates(const std::vector<double>& ests) {
  SimEstimate out;
  out.samples = static_cast<int>(ests.size());
  double sum = 0.0;
  for (double e : ests) sum += e;
  out.h_hat = sum / out.samples;
  double ss = 0.0;
  for (double e : ests) ss += (e - out.h_hat) * (e - out.h_hat);
  out.std_err = std::sqrt(ss / (out.samples - 1)) / std::sqrt(out.samples);
  return out;
}

void validate_config(const LtiConsensusSystem& system, const SimConfig& cfg) {
  if (cfg.dt <= 0 || cfg.horizon <= 0 || cfg.burn_in < 0)
    throw ValidationError("simulation needs dt > 0, horizon > 0, burn_in >= 0");
  if (cfg.replicates < 2)
    throw ValidationError("simulation needs at least 2 replicates");
  if (cfg.noise_scale < 0)
    throw ValidationError("noise scale must be >= 0");
  auto [lambda2, lambda_max] = spectral_extremes(system.laplacian);
  if (cfg.dt * system.beta * lambda_max >= 0.1)
    throw ValidationError("dt too large: need dt * beta * lambda_max < 0.1");
  if (cfg.horizon < 20.0 / (system.beta * lambda2))
    throw ValidationError("horizon too short: need >= 20 / (beta lambda_2)");
}

SimEstimate simulate_impl(const LtiConsensusSystem& system,
                          const SimConfig& cfg, bool parallel) {
  validate_config(system, cfg);
  std::vector<double> ests(static_cast<std::size_t>(cfg.replicates), 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int r = 0; r < cfg.replicates; ++r)
    ests[r] = run_replicate(system, cfg, r);
  return merge_replicates(ests);
}

}  // namespace

LtiConsensusSystem make_system(const Graph& g, DynamicsOrder order,
                               double beta) {
  if (beta <= 0) throw ValidationError("beta must be > 0");
  if (!is_connected(g))
    throw ValidationError("consensus system requires a connected graph");
  return {order, beta, laplacian(g)};
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& Q) {
  const auto n = A.rows();
  if (A.cols() != n || Q.rows() != n || Q.cols() != n)
    throw ValidationError("Lyapunov solve needs square same-size A and Q");
  using ComplexMatrix = Eigen::MatrixXcd;
  Eigen::ComplexSchur<Eigen::MatrixXd> schur(A);
  if (schur.info() != Eigen::Success)
    throw InvariantError("Schur decomposition failed");
  const ComplexMatrix T = schur.matrixT();
  const ComplexMatrix U = schur.matrixU();
  for (Eigen::Index i = 0; i < n; ++i)
    if (T(i, i).real() >= 0)
      throw InvariantError(
          "Lyapunov solve: system matrix is not stable (eigenvalue with "
          "nonnegative real part)");

  // Solve T Y + Y T^H + W = 0 by back-substitution: entry (i,j) depends
  // only on rows below i and columns right of j.
  ComplexMatrix W = U.adjoint() * Q * U;
  ComplexMatrix Y = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    for (Eigen::Index j = n - 1; j >= 0; --j) {
      std::complex<double> rhs = W(i, j);
      for (Eigen::Index k = i + 1; k < n; ++k) rhs += T(i, k) * Y(k, j);
      for (Eigen::Index k = j + 1; k < n; ++k)
        rhs += Y(i, k) * std::conj(T(j, k));
      Y(i, j) = -rhs / (T(i, i) + std::conj(T(j, j)));
    }
  }
  Eigen::MatrixXd X = (U * Y * U.adjoint()).real();
  return 0.5 * (X + X.transpose());
}

double lyapunov_h2(const LtiConsensusSystem& system) {
  const int n = static_cast<int>(system.laplacian.rows());
  if (n < 2) throw ValidationError("coherence needs N >= 2");
  const Eigen::MatrixXd V = ones_complement_basis(n);
  const Eigen::MatrixXd Lred = V.transpose() * system.laplacian * V;
  const int m = n - 1;

  if (system.order == DynamicsOrder::first) {
    Eigen::MatrixXd A = -system.beta * Lred;
    Eigen::MatrixXd Sigma =
        solve_lyapunov(A, Eigen::MatrixXd::Identity(m, m));
    return Sigma.trace() / n;
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  A.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  A.bottomLeftCorner(m, m) = -system.beta * Lred;
  A.bottomRightCorner(m, m) = -system.beta * Lred;
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  Q.bottomRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd Sigma = solve_lyapunov(A, Q);
  return Sigma.topLeftCorner(m, m).trace() / n;
}

SimConfig default_sim_config(const LtiConsensusSystem& system,
                             std::uint64_t seed) {
  auto [lambda2, lambda_max] = spectral_extremes(system.laplacian);
  SimConfig cfg;
  cfg.dt = 0.02 / (system.beta * lambda_max);
  cfg.burn_in = 10.0 / (system.beta * lambda2);
  cfg.horizon = 60.0 / (system.beta * lambda2);
  cfg.replicates = 32;
  cfg.seed = seed;
  return cfg;
}

SimEstimate simulate_variance(const LtiConsensusSystem& system,
                              const SimConfig& config) {
  return simulate_impl(system, config, true);
}

SimEstimate simulate_variance_serial(const LtiConsensusSystem& system,
                                     const SimConfig& config) {
  return simulate_impl(system, config, false);
}

}  // namespace netcoh
