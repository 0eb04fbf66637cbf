#include <doctest.h>

#include <cmath>

#include "netcoh/consensus_sim.hpp"
#include "netcoh/generators.hpp"
#include "netcoh/spectrum.hpp"

using namespace netcoh;

TEST_CASE("lyapunov solver on hand-checkable systems") {
  // A = -I, Q = I: the unique solution of AX + XA^T + Q = 0 is X = I/2.
  Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd X = solve_lyapunov(A, Q);
  CHECK((X - 0.5 * Q).cwiseAbs().maxCoeff() < 1e-12);

  // Non-normal stable A: verify by the residual instead of a closed form.
  Eigen::MatrixXd B(2, 2);
  B << -1, 3, 0, -2;
  Eigen::MatrixXd W(2, 2);
  W << 2, 1, 1, 4;
  Eigen::MatrixXd Y = solve_lyapunov(B, W);
  CHECK((B * Y + Y * B.transpose() + W).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((Y - Y.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lyapunov solver rejects unstable dynamics") {
  Eigen::MatrixXd A(2, 2);
  A << 1, 0, 0, -1;  // one eigenvalue in the right half-plane
  CHECK_THROWS_AS(solve_lyapunov(A, Eigen::MatrixXd::Identity(2, 2)),
                  InvariantError);
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(solve_lyapunov(rect, rect), ValidationError);
}

TEST_CASE("two-node anchors: H_FO = 1/8 and H_SO = 1/16") {
  // One edge, nonzero eigenvalue 2: S = 1/2, S2 = 1/4, so at beta = 1
  // H_FO = (1/2)/(2*2) = 1/8 and H_SO = (1/4)/(2*2) = 1/16.
  Graph g = path(2);
  CHECK(lyapunov_h2(make_system(g, DynamicsOrder::first, 1.0)) ==
        doctest::Approx(0.125).epsilon(1e-12));
  CHECK(lyapunov_h2(make_system(g, DynamicsOrder::second, 1.0)) ==
        doctest::Approx(0.0625).epsilon(1e-12));
}

TEST_CASE("lyapunov route equals the spectral formula") {
  // Two independent computations of the same steady-state variance: the
  // Lyapunov solve never sees individual eigenvalues.
  std::vector<Graph> graphs = {tree_like(2, 1), tree_like(1, 2), vicsek(4, 1),
                               vicsek(3, 2),    ring(9),         torus2d(3),
                               path(8)};
  for (const Graph& g : graphs)
    for (double beta : {0.5, 1.0, 2.0}) {
      SpectrumSummary s = spectrum_summary(laplacian(g));
      const double n = g.num_nodes;
      CAPTURE(g.label);
      CAPTURE(beta);
      CHECK(lyapunov_h2(make_system(g, DynamicsOrder::first, beta)) ==
            doctest::Approx(s.S / (2.0 * beta * n)).epsilon(1e-8));
      CHECK(lyapunov_h2(make_system(g, DynamicsOrder::second, beta)) ==
            doctest::Approx(s.S2 / (2.0 * beta * beta * n)).epsilon(1e-8));
    }
}

TEST_CASE("default config satisfies its own invariants") {
  Graph g = ring(12);
  auto system = make_system(g, DynamicsOrder::first, 2.0);
  SimConfig cfg = default_sim_config(system, 1);
  SpectrumSummary s = spectrum_summary(laplacian(g));
  double lambda2 = s.eigenvalues[1], lambda_max = s.eigenvalues.back();
  CHECK(cfg.dt * 2.0 * lambda_max == doctest::Approx(0.02));
  CHECK(cfg.horizon >= 20.0 / (2.0 * lambda2));
  CHECK(cfg.burn_in == doctest::Approx(10.0 / (2.0 * lambda2)));
  CHECK(cfg.replicates == 32);
}

TEST_CASE("config validation rejects unstable or underresolved settings") {
  Graph g = ring(8);
  auto system = make_system(g, DynamicsOrder::first, 1.0);
  SimConfig cfg = default_sim_config(system, 1);

  SimConfig bad = cfg;
  bad.dt = 1.0;  // dt * beta * lambda_max = 4: way past the explicit-step bound
  CHECK_THROWS_AS(simulate_variance(system, bad), ValidationError);

  bad = cfg;
  bad.horizon = 1e-3;
  CHECK_THROWS_AS(simulate_variance(system, bad), ValidationError);

  bad = cfg;
  bad.replicates = 1;
  CHECK_THROWS_AS(simulate_variance(system, bad), ValidationError);

  CHECK_THROWS_AS(make_system(g, DynamicsOrder::first, 0.0), ValidationError);
  CHECK_THROWS_AS(
      make_system(build_graph(4, {{0, 1}, {2, 3}}), DynamicsOrder::first, 1.0),
      ValidationError);
}

TEST_CASE("zero noise decays to zero variance") {
  Graph g = ring(6);
  auto system = make_system(g, DynamicsOrder::first, 1.0);
  SimConfig cfg = default_sim_config(system, 7);
  cfg.noise_scale = 0.0;
  SimEstimate est = simulate_variance(system, cfg);
  CHECK(est.h_hat == 0.0);  // starts at consensus, nothing perturbs it
}

TEST_CASE("a fixed seed reproduces the estimate bit for bit") {
  Graph g = path(6);
  auto system = make_system(g, DynamicsOrder::second, 1.0);
  SimConfig cfg = default_sim_config(system, 20260401);
  SimEstimate a = simulate_variance(system, cfg);
  SimEstimate b = simulate_variance(system, cfg);
  CHECK(a.h_hat == b.h_hat);
  CHECK(a.std_err == b.std_err);
  // A different seed gives a genuinely different realization.
  cfg.seed = 20260402;
  SimEstimate c = simulate_variance(system, cfg);
  CHECK(a.h_hat != c.h_hat);
}

TEST_CASE("monte-carlo estimates straddle the analytic value") {
  std::vector<Graph> graphs = {path(2), ring(8), tree_like(2, 1)};
  for (const Graph& g : graphs)
    for (DynamicsOrder order : {DynamicsOrder::first, DynamicsOrder::second}) {
      SpectrumSummary s = spectrum_summary(laplacian(g));
      const double n = g.num_nodes;
      double analytic = order == DynamicsOrder::first
                            ? s.S / (2.0 * n)
                            : s.S2 / (2.0 * n);
      auto system = make_system(g, order, 1.0);
      SimEstimate est = simulate_variance(system, default_sim_config(system, 5));
      CAPTURE(g.label);
      CHECK(std::abs(est.h_hat - analytic) <= 3.0 * est.std_err);
      CHECK(std::abs(est.h_hat - analytic) <= 0.10 * analytic);
      CHECK(est.std_err > 0.0);
      CHECK(est.samples == 32);
    }
}

TEST_CASE("halving dt does not move the estimate outside its error bars") {
  // The integrator's O(dt) bias must be well inside the Monte-Carlo noise
  // at the default step; otherwise estimates would drift with dt.
  Graph g = ring(8);
  auto system = make_system(g, DynamicsOrder::first, 1.0);
  SimConfig coarse = default_sim_config(system, 11);
  SimConfig fine = coarse;
  fine.dt = coarse.dt / 2.0;
  SimEstimate a = simulate_variance(system, coarse);
  SimEstimate b = simulate_variance(system, fine);
  double joint = std::hypot(a.std_err, b.std_err);
  CHECK(std::abs(a.h_hat - b.h_hat) <= 3.0 * joint);
}
