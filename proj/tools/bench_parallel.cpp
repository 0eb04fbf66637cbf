// Benchmark: OpenMP kernels against their serial reference implementations.
//
// Every parallel kernel in the library merges per-worker partial results in a
// fixed order, so the two variants must agree bit for bit; this tool verifies
// that while timing them.  Wall-clock ratios depend on the machine and the
// OMP_NUM_THREADS setting.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "netcoh/coherence.hpp"
#include "netcoh/consensus_sim.hpp"
#include "netcoh/generators.hpp"
#include "netcoh/graph.hpp"

using namespace netcoh;

namespace {

double seconds(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const std::string& kernel, std::int64_t n, double t_serial,
            double t_parallel, bool identical) {
  std::printf("%-28s N=%-6lld serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              kernel.c_str(), static_cast<long long>(n), t_serial, t_parallel,
              t_parallel > 0 ? t_serial / t_parallel : 0.0,
              identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d (of %d processors)\n\n", omp_get_max_threads(),
              omp_get_num_procs());

  {
    // Pair sum over the Laplacian pseudo-inverse.  Both variants share the
    // O(N^3) pseudo-inverse; the measured contrast is in the O(N^2) pair sum.
    Graph g = vicsek(4, 4);
    double r_serial = 0, r_parallel = 0;
    double ts = seconds([&] { r_serial = effective_resistance_total_serial(g); });
    double tp = seconds([&] { r_parallel = effective_resistance_total(g); });
    report("effective resistance", g.num_nodes, ts, tp, r_serial == r_parallel);
  }

  {
    // One deleted-Laplacian solve per target column.
    Graph g = tree_like(2, 4);
    Eigen::MatrixXd h_serial, h_parallel;
    double ts = seconds([&] { h_serial = hitting_time_matrix_serial(g); });
    double tp = seconds([&] { h_parallel = hitting_time_matrix(g); });
    report("hitting times", g.num_nodes, ts, tp, h_serial == h_parallel);
  }

  {
    // One breadth-first search per source node.
    Graph g = tree_like(1, 7);
    double w_serial = 0, w_parallel = 0;
    double ts = seconds([&] { w_serial = wiener_index_serial(g); });
    double tp = seconds([&] { w_parallel = wiener_index(g); });
    report("Wiener index", g.num_nodes, ts, tp, w_serial == w_parallel);
  }

  for (DynamicsOrder order : {DynamicsOrder::first, DynamicsOrder::second}) {
    // Independent noise replicates, one RNG stream each.
    Graph g = ring(24);
    auto system = make_system(g, order, 1.0);
    SimConfig cfg = default_sim_config(system, 99);
    SimEstimate e_serial, e_parallel;
    double ts = seconds([&] { e_serial = simulate_variance_serial(system, cfg); });
    double tp = seconds([&] { e_parallel = simulate_variance(system, cfg); });
    report(order == DynamicsOrder::first ? "simulation (first order)"
                                         : "simulation (second order)",
           g.num_nodes, ts, tp,
           e_serial.h_hat == e_parallel.h_hat &&
               e_serial.std_err == e_parallel.std_err);
  }

  return 0;
}
