#include <doctest.h>

#include <cmath>

#include "netcoh/generators.hpp"
#include "netcoh/spectrum.hpp"

using namespace netcoh;

namespace {

Eigen::MatrixXd star_laplacian(int leaves) {
  Graph g = [&] {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return build_graph(leaves + 1, std::move(edges), "star");
  }();
  return laplacian(g);
}

}  // namespace

TEST_CASE("triangle spectrum is {0, 3, 3}") {
  Graph tri = build_graph(3, {{0, 1}, {0, 2}, {1, 2}});
  auto vals = eigenvalues(laplacian(tri));
  REQUIRE(vals.size() == 3);
  CHECK(vals[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(vals[1] == doctest::Approx(3.0));
  CHECK(vals[2] == doctest::Approx(3.0));
}

TEST_CASE("star spectra: K_{1,3} -> {0,1,1,4}, two-path -> {0,2}") {
  auto k13 = eigenvalues(star_laplacian(3));
  REQUIRE(k13.size() == 4);
  CHECK(k13[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(k13[1] == doctest::Approx(1.0));
  CHECK(k13[2] == doctest::Approx(1.0));
  CHECK(k13[3] == doctest::Approx(4.0));

  auto p2 = eigenvalues(laplacian(path(2)));
  CHECK(p2[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p2[1] == doctest::Approx(2.0));
}

TEST_CASE("K_{1,4} reciprocal sums: S = 16/5, S2 = 76/25") {
  // Nonzero eigenvalues 1, 1, 1, 5: S = 3 + 1/5, S2 = 3 + 1/25.
  SpectrumSummary s = spectrum_summary(star_laplacian(4));
  CHECK(s.S == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(s.S2 == doctest::Approx(3.04).epsilon(1e-12));
  CHECK(inverse_sum(s) == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(inverse_square_sum(s) == doctest::Approx(3.04).epsilon(1e-12));
}

TEST_CASE("eigenvalue sum equals twice the edge count") {
  // tr(L) = sum of degrees = 2M.
  for (const Graph& g : {tree_like(2, 3), vicsek(3, 2), ring(17), torus2d(4)}) {
    auto vals = eigenvalues(laplacian(g));
    double total = 0;
    for (double v : vals) total += v;
    CHECK(total == doctest::Approx(2.0 * g.num_edges()).epsilon(1e-10));
  }
}

TEST_CASE("for a tree the product of nonzero eigenvalues equals N") {
  // The matrix-tree theorem counts spanning trees: product / N = 1.
  for (const Graph& g : {tree_like(1, 4), tree_like(3, 2), path(30)}) {
    SpectrumSummary s = spectrum_summary(laplacian(g));
    double log_prod = 0;
    for (double v : s.eigenvalues)
      if (v > s.zero_tolerance) log_prod += std::log(v);
    CHECK(log_prod ==
          doctest::Approx(std::log(static_cast<double>(g.num_nodes)))
              .epsilon(1e-8));
  }
}

TEST_CASE("counting function steps through the sorted spectrum") {
  SpectrumSummary s = spectrum_summary(star_laplacian(3));  // {0,1,1,4}
  // The zero mode is only zero up to roundoff; it is visible from the
  // tolerance onward.
  CHECK(counting_function(s, s.zero_tolerance) == 1);
  CHECK(counting_function(s, 0.5) == 1);
  CHECK(counting_function(s, 1.0) == 3);
  CHECK(counting_function(s, 3.9) == 3);
  CHECK(counting_function(s, 4.0) == 4);
  CHECK_THROWS_AS(counting_function(s, -1.0), ValidationError);
}

TEST_CASE("zero tolerance scales with N and the spectral radius") {
  SpectrumSummary s = spectrum_summary(laplacian(ring(100)));
  double lam_max = s.eigenvalues.back();
  CHECK(s.zero_tolerance == doctest::Approx(1e-9 * 100 * lam_max));
}

TEST_CASE("reciprocal sums refuse disconnected graphs") {
  // Two zero eigenvalues: the summary (which computes S) refuses outright,
  // and so do the sums on a hand-assembled summary.
  Graph two = build_graph(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(spectrum_summary(laplacian(two)), InvariantError);
  SpectrumSummary s;
  s.eigenvalues = eigenvalues(laplacian(two));
  s.zero_tolerance = 1e-9 * 4 * s.eigenvalues.back();
  CHECK_THROWS_AS(inverse_sum(s), InvariantError);
  CHECK_THROWS_AS(inverse_square_sum(s), InvariantError);
}

TEST_CASE("eigensolve validates its input") {
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(eigenvalues(rect), ValidationError);

  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, -1, 0;
  CHECK_THROWS_AS(eigenvalues(asym), ValidationError);

  int old_cap = max_dense_nodes();
  set_max_dense_nodes(10);
  CHECK_THROWS_AS(eigenvalues(laplacian(ring(11))), ResourceError);
  set_max_dense_nodes(old_cap);
}

TEST_CASE("eigenvalues satisfy the characteristic residual") {
  // Independent of the solver: det-free check that each reported eigenvalue
  // makes L - lambda I singular, via the smallest singular value.
  Graph g = tree_like(2, 2);
  Eigen::MatrixXd L = laplacian(g);
  auto vals = eigenvalues(L);
  const int n = g.num_nodes;
  for (double lam : {vals[1], vals[n / 2], vals[n - 1]}) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        L - lam * Eigen::MatrixXd::Identity(n, n));
    CHECK(svd.singularValues().minCoeff() < 1e-9 * n * vals.back());
  }
}
