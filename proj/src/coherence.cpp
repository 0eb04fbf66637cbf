#include "netcoh/coherence.hpp"

#include <omp.h>

#include <queue>
#include <vector>

namespace netcoh {

std::string route_name(Route r) {
  switch (r) {
    case Route::eigen: return "eigen";
    case Route::tree_recursion: return "tree_recursion";
    case Route::vicsek_recursion: return "vicsek_recursion";
    case Route::lyapunov: return "lyapunov";
    case Route::montecarlo: return "montecarlo";
  }
  return "unknown";
}

double h_fo(double S, double beta, std::int64_t N) {
  if (S <= 0 || beta <= 0 || N < 2)
    throw ValidationError("h_fo needs S > 0, beta > 0, N >= 2");
  return S / (2.0 * beta * static_cast<double>(N));
}

double h_so(double S2, double beta, std::int64_t N) {
  if (S2 <= 0 || beta <= 0 || N < 2)
    throw ValidationError("h_so needs S2 > 0, beta > 0, N >= 2");
  return S2 / (2.0 * beta * beta * static_cast<double>(N));
}

Eigen::MatrixXd laplacian_pseudoinverse(const Graph& g) {
  if (!is_connected(g))
    throw ValidationError("pseudo-inverse requires a connected graph");
  const int n = g.num_nodes;
  const double shift = 1.0 / n;
  Eigen::MatrixXd shifted = laplacian(g);
  shifted.array() += shift;  // L + (1/N) 1 1^T, strictly positive definite
  Eigen::MatrixXd inv =
      shifted.ldlt().solve(Eigen::MatrixXd::Identity(n, n));
  inv.array() -= shift;
  return inv;
}

namespace {

// Shared pair-sum core: per-row partial sums over j > i, merged in row
// order.  Serial and parallel versions perform identical arithmetic, so
// their results agree bit-for-bit.
double resistance_pair_sum(const Eigen::MatrixXd& pinv, bool parallel) {
  const int n = static_cast<int>(pinv.rows());
  std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = i + 1; j < n; ++j)
      acc += pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
    partial[i] = acc;
  }
  double unordered = 0.0;
  for (int i = 0; i < n; ++i) unordered += partial[i];
  return 2.0 * unordered;  // ordered pairs
}

Eigen::MatrixXd hitting_times_impl(const Graph& g, bool parallel) {
  if (!is_connected(g))
    throw ValidationError("hitting times require a connected graph");
  const int n = g.num_nodes;
  const Eigen::MatrixXd L = laplacian(g);
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int j = 0; j < n; ++j) {
    // Delete row/column j; solve (L without j) f = degrees.
    Eigen::MatrixXd A(n - 1, n - 1);
    Eigen::VectorXd d(n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == j) continue;
      d(rr) = L(r, r);  // degree of node r
      for (int c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        A(rr, cc) = L(r, c);
        ++cc;
      }
      ++rr;
    }
    Eigen::VectorXd f = A.llt().solve(d);
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == j) continue;
      F(r, j) = f(rr);
      ++rr;
    }
  }
  return F;
}

double wiener_impl(const Graph& g, bool parallel) {
  if (!is_connected(g))
    throw ValidationError("Wiener index requires a connected graph");
  const int n = g.num_nodes;
  const auto adj = adjacency_list(g);
  std::vector<std::int64_t> partial(n, 0);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    std::int64_t acc = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      acc += dist[u];
      for (int w : adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
    }
    partial[s] = acc;
  }
  std::int64_t ordered = 0;
  for (int s = 0; s < n; ++s) ordered += partial[s];
  return static_cast<double>(ordered) / 2.0;  // unordered pairs
}

}  // namespace

double effective_resistance_total(const Graph& g) {
  return resistance_pair_sum(laplacian_pseudoinverse(g), true);
}

double effective_resistance_total_serial(const Graph& g) {
  return resistance_pair_sum(laplacian_pseudoinverse(g), false);
}

Eigen::MatrixXd hitting_time_matrix(const Graph& g) {
  return hitting_times_impl(g, true);
}

Eigen::MatrixXd hitting_time_matrix_serial(const Graph& g) {
  return hitting_times_impl(g, false);
}

double mean_hitting_time(const Eigen::MatrixXd& hitting) {
  const auto n = hitting.rows();
  if (n < 2) throw ValidationError("mean hitting time needs N >= 2");
  return hitting.sum() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double gmfpt(const Graph& g, double S) {
  if (g.num_nodes < 2) throw ValidationError("gmfpt needs N >= 2");
  return 2.0 * static_cast<double>(g.num_edges()) * S /
         static_cast<double>(g.num_nodes - 1);
}

double wiener_index(const Graph& g) { return wiener_impl(g, true); }

double wiener_index_serial(const Graph& g) { return wiener_impl(g, false); }

}  // namespace netcoh
