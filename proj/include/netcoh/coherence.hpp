#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "netcoh/graph.hpp"

namespace netcoh {

/// Which computation produced a coherence figure.
enum class Route { eigen, tree_recursion, vicsek_recursion, lyapunov, montecarlo };

std::string route_name(Route r);

/// One family/graph evaluated by one route.
struct CoherenceReport {
  std::int64_t N = 0;
  std::int64_t M = 0;
  double beta = 1.0;
  double S = 0.0;
  double S2 = 0.0;
  double h_fo = 0.0;
  double h_so = 0.0;
  Route route = Route::eigen;
};

/// First-order coherence S / (2 beta N): steady per-node variance of the
/// deviation from the network average under single-integrator dynamics.
double h_fo(double S, double beta, std::int64_t N);

/// Second-order coherence S2 / (2 beta^2 N).
double h_so(double S2, double beta, std::int64_t N);

/// Moore-Penrose pseudo-inverse of a connected graph's Laplacian, computed
/// by deflating the known all-ones null vector:
///   L^+ = (L + (1/N) 11^T)^{-1} - (1/N) 11^T.
/// No rank-revealing thresholds are involved.
Eigen::MatrixXd laplacian_pseudoinverse(const Graph& g);

/// Total effective resistance over *ordered* node pairs with every edge a
/// unit resistor: sum_{i != j} (L+_ii + L+_jj - 2 L+_ij).
/// The OpenMP variant accumulates per-row partial sums and reduces them in
/// row order, so its result is bit-identical to the serial variant.
double effective_resistance_total(const Graph& g);
double effective_resistance_total_serial(const Graph& g);

/// Expected first-passage steps f(i -> j) of the simple random walk (move
/// to a uniformly random neighbor each step).  Column j solves the linear
/// system  d_i f_ij - sum_{k ~ i, k != j} f_kj = d_i  with f_jj = 0, which
/// is the Laplacian with row/column j deleted applied to the degree vector.
/// Columns are independent; the parallel variant distributes them.
Eigen::MatrixXd hitting_time_matrix(const Graph& g);
Eigen::MatrixXd hitting_time_matrix_serial(const Graph& g);

/// Mean of f(i -> j) over ordered pairs i != j.
double mean_hitting_time(const Eigen::MatrixXd& hitting);

/// Global mean first passage time 2 M S / (N - 1); equals the mean of the
/// hitting-time matrix over ordered pairs (checked in the verify suite).
double gmfpt(const Graph& g, double S);

/// Sum of shortest-path lengths over unordered pairs, by BFS from every
/// source.  For trees this equals N * S.  Parallel variant: one BFS per
/// source, partial sums reduced in source order (bit-identical to serial).
double wiener_index(const Graph& g);
double wiener_index_serial(const Graph& g);

}  // namespace netcoh
