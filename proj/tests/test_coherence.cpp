#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "netcoh/coherence.hpp"
#include "netcoh/generators.hpp"
#include "netcoh/spectrum.hpp"

using namespace netcoh;

namespace {

Graph k13() { return build_graph(4, {{0, 1}, {0, 2}, {0, 3}}, "k13"); }
Graph triangle() { return build_graph(3, {{0, 1}, {0, 2}, {1, 2}}, "tri"); }

}  // namespace

TEST_CASE("coherence formulas") {
  CHECK(h_fo(3.2, 1.0, 5) == doctest::Approx(0.32));
  CHECK(h_fo(3.2, 2.0, 5) == doctest::Approx(0.16));
  CHECK(h_so(3.04, 2.0, 5) == doctest::Approx(3.04 / 40.0));
  CHECK_THROWS_AS(h_fo(1.0, 0.0, 5), ValidationError);
  CHECK_THROWS_AS(h_fo(1.0, -1.0, 5), ValidationError);
  CHECK_THROWS_AS(h_so(1.0, 1.0, 0), ValidationError);
}

TEST_CASE("pseudo-inverse inverts on the orthogonal complement of ones") {
  Graph g = tree_like(2, 2);
  Eigen::MatrixXd L = laplacian(g);
  Eigen::MatrixXd P = laplacian_pseudoinverse(g);
  const int n = g.num_nodes;
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n) -
                      Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  CHECK((L * P - J).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((P * L - J).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((P.rowwise().sum()).cwiseAbs().maxCoeff() < 1e-10);  // P 1 = 0
  CHECK_THROWS_AS(laplacian_pseudoinverse(build_graph(4, {{0, 1}, {2, 3}})),
                  ValidationError);
}

TEST_CASE("K_{1,3} exact values: R = 18, W = 9, mean hitting 4.5") {
  // Center-leaf resistance 1, leaf-leaf 2: over unordered pairs
  // 3*1 + 3*2 = 9, doubled for ordered pairs = 18.  Distances coincide
  // with resistances on a tree, so W = 9.
  Graph g = k13();
  CHECK(effective_resistance_total(g) == doctest::Approx(18.0).epsilon(1e-12));
  CHECK(wiener_index(g) == doctest::Approx(9.0).epsilon(1e-12));

  // Walks on the star: a leaf steps to the center deterministically, so
  // f(leaf->center) = 1.  From the center, f = 1 + (2/3)(1 + f) gives
  // f(center->leaf) = 5.  Leaf to leaf forces a first step to the center:
  // f(leaf->leaf') = 1 + 5 = 6.
  Eigen::MatrixXd F = hitting_time_matrix(g);
  CHECK(F(1, 0) == doctest::Approx(1.0).epsilon(1e-12));   // leaf -> center
  CHECK(F(0, 1) == doctest::Approx(5.0).epsilon(1e-12));   // center -> leaf
  CHECK(F(1, 2) == doctest::Approx(6.0).epsilon(1e-12));   // leaf -> leaf
  CHECK(F(0, 1) + F(1, 0) == doctest::Approx(6.0));        // commute = 2M * r
  CHECK(mean_hitting_time(F) == doctest::Approx(4.5).epsilon(1e-12));

  SpectrumSummary s = spectrum_summary(laplacian(g));
  CHECK(gmfpt(g, s.S) == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("triangle exact values") {
  // Each pair: 1 ohm parallel to 2 ohms = 2/3; hitting time 2 by symmetry.
  Graph g = triangle();
  CHECK(effective_resistance_total(g) ==
        doctest::Approx(6.0 * 2.0 / 3.0).epsilon(1e-12));
  Eigen::MatrixXd F = hitting_time_matrix(g);
  CHECK(F(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mean_hitting_time(F) == doctest::Approx(2.0).epsilon(1e-12));
  // S = 2/3, so H_FO = S/(2N) = 1/9 at beta = 1.
  SpectrumSummary s = spectrum_summary(laplacian(g));
  CHECK(h_fo(s.S, 1.0, 3) == doctest::Approx(1.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("two-node path: resistance 1, hitting time 1") {
  Graph g = path(2);
  CHECK(effective_resistance_total(g) == doctest::Approx(2.0));
  CHECK(hitting_time_matrix(g)(0, 1) == doctest::Approx(1.0));
  CHECK(wiener_index(g) == doctest::Approx(1.0));
}

TEST_CASE("identities tie resistance, hitting times, and distances to S") {
  // R = 2 N S over ordered pairs; mean hitting time = 2 M S / (N-1);
  // and on trees W = N S.  Checked on a mixed batch of graphs.
  std::vector<Graph> graphs = {tree_like(1, 3), tree_like(2, 2), vicsek(3, 2),
                               vicsek(4, 2),    ring(13),        path(11),
                               torus2d(4)};
  for (const Graph& g : graphs) {
    SpectrumSummary s = spectrum_summary(laplacian(g));
    const double n = g.num_nodes;
    CHECK(effective_resistance_total(g) ==
          doctest::Approx(2.0 * n * s.S).epsilon(1e-9));
    CHECK(mean_hitting_time(hitting_time_matrix(g)) ==
          doctest::Approx(gmfpt(g, s.S)).epsilon(1e-9));
    if (g.num_edges() == g.num_nodes - 1)
      CHECK(wiener_index(g) == doctest::Approx(n * s.S).epsilon(1e-9));
  }
}

TEST_CASE("relabeling nodes does not change any aggregate") {
  // Apply a fixed permutation to a tree and compare the label-free numbers.
  Graph g = tree_like(2, 2);
  const int n = g.num_nodes;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(424242);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges) edges.emplace_back(perm[u], perm[v]);
  Graph h = build_graph(n, std::move(edges), "relabeled");

  CHECK(effective_resistance_total(h) ==
        doctest::Approx(effective_resistance_total(g)).epsilon(1e-10));
  CHECK(wiener_index(h) == doctest::Approx(wiener_index(g)).epsilon(1e-12));
  CHECK(mean_hitting_time(hitting_time_matrix(h)) ==
        doctest::Approx(mean_hitting_time(hitting_time_matrix(g)))
            .epsilon(1e-10));
}

TEST_CASE("hitting matrix shape and diagonal") {
  Graph g = ring(7);
  Eigen::MatrixXd F = hitting_time_matrix(g);
  CHECK(F.rows() == 7);
  CHECK(F.diagonal().cwiseAbs().maxCoeff() == 0.0);
  // Ring is vertex-transitive: F(i,j) depends only on the gap.
  CHECK(F(0, 1) == doctest::Approx(F(3, 4)).epsilon(1e-10));
  CHECK(F(0, 2) == doctest::Approx(F(5, 0)).epsilon(1e-10));
}
