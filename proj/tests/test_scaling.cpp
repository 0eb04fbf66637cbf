#include <doctest.h>

#include <cmath>

#include "netcoh/generators.hpp"
#include "netcoh/scaling.hpp"
#include "netcoh/spectrum.hpp"
#include "netcoh/tree_recursion.hpp"
#include "netcoh/vicsek_recursion.hpp"

using namespace netcoh;

TEST_CASE("power-law fit recovers a synthetic exponent exactly") {
  std::vector<std::pair<double, double>> pts;
  for (double n : {10.0, 40.0, 90.0, 500.0, 2000.0})
    pts.emplace_back(n, 7.0 * std::pow(n, 1.5));
  ScalingFit fit = fit_exponent(pts);
  CHECK(fit.exponent == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::exp(fit.log_prefactor) == doctest::Approx(7.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log-linear fit recovers a synthetic logarithm exactly") {
  std::vector<std::pair<double, double>> pts;
  for (double n : {8.0, 64.0, 256.0, 1024.0})
    pts.emplace_back(n, 3.0 * std::log(n) - 1.25);
  LogLinearFit fit = fit_log_linear(pts);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(-1.25).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fits validate their input") {
  std::vector<std::pair<double, double>> two = {{1, 1}, {2, 2}};
  CHECK_THROWS_AS(fit_exponent(two), ValidationError);
  std::vector<std::pair<double, double>> neg = {{1, 1}, {2, -2}, {3, 3}};
  CHECK_THROWS_AS(fit_exponent(neg), ValidationError);
  std::vector<std::pair<double, double>> flat = {{2, 1}, {2, 2}, {2, 3}};
  CHECK_THROWS_AS(fit_exponent(flat), ValidationError);
}

TEST_CASE("ball growth on a ring counts shells of width two") {
  Graph g = ring(12);
  BallGrowthProfile p = ball_growth(g, 0);
  // |B(r)| = 2r + 1 until the ball wraps at the antipode.
  REQUIRE(p.radii.size() == 7);  // r = 0..6
  CHECK(p.sizes[0] == 1);
  CHECK(p.sizes[1] == 3);
  CHECK(p.sizes[2] == 5);
  CHECK(p.sizes[5] == 11);
  CHECK(p.sizes[6] == 12);
  CHECK(p.center == 0);
}

TEST_CASE("default ball center is a maximum-degree node, lowest label") {
  // In the first tree-like generation the midpoint (label 2) has degree
  // m + 2, all other nodes degree 1.
  CHECK(default_ball_center(tree_like(2, 1)) == 2);
  CHECK(default_ball_center(vicsek(4, 1)) == 0);
  CHECK(default_ball_center(ring(9)) == 0);  // all tie at degree 2
}

TEST_CASE("fractal dimension estimates land near the analytic value") {
  // Windowed log-log slope of ball sizes; tolerances are loose because the
  // finite graphs carry boundary effects.
  double ring_d = estimate_fractal_dimension(ball_growth(ring(256), 0));
  CHECK(ring_d == doctest::Approx(1.0).epsilon(0.10));

  Graph t = tree_like(2, 6);  // analytic d_f = 2
  double tree_d =
      estimate_fractal_dimension(ball_growth(t, default_ball_center(t)));
  CHECK(tree_d == doctest::Approx(2.0).epsilon(0.15));

  Graph w = vicsek(4, 5);  // analytic d_f = log 5 / log 3 = 1.465
  double vic_d =
      estimate_fractal_dimension(ball_growth(w, default_ball_center(w)));
  CHECK(vic_d == doctest::Approx(std::log(5.0) / std::log(3.0)).epsilon(0.15));
}

TEST_CASE("fractal dimension needs enough diameter to fit on") {
  CHECK_THROWS_AS(estimate_fractal_dimension(ball_growth(ring(8), 0)),
                  ValidationError);
}

TEST_CASE("spectral dimension from the eigenvalue counting function") {
  // d_s = 2 * slope of log rho(x) vs log x over the low-frequency window.
  SpectrumSummary s = spectrum_summary(laplacian(ring(2048)));
  CHECK(estimate_spectral_dimension(s) == doctest::Approx(1.0).epsilon(0.10));

  SpectrumSummary small = spectrum_summary(laplacian(ring(100)));
  CHECK_THROWS_AS(estimate_spectral_dimension(small), ValidationError);
}

TEST_CASE("fitted coherence exponents match the analytic dimensions") {
  // Exact recursion values across the six largest computed generations;
  // the power-law fit has to reproduce 1/d_f and 1 + 2/d_f to within 2%,
  // and the d_s-form exponents (2/d_s - 1, 4/d_s - 1) are the same numbers.
  for (const CoherenceTableRow& row : coherence_table(1.0)) {
    CAPTURE(row.family);
    CAPTURE(row.param);
    CHECK(row.hfo_fit ==
          doctest::Approx(row.hfo_exponent_df).epsilon(0.02));
    CHECK(row.hso_fit ==
          doctest::Approx(row.hso_exponent_df).epsilon(0.02));
    CHECK(row.hfo_exponent_ds ==
          doctest::Approx(row.hfo_exponent_df).epsilon(1e-12));
    CHECK(row.hso_exponent_ds ==
          doctest::Approx(row.hso_exponent_df).epsilon(1e-12));
    CHECK(row.hfo_r2 >= 0.9999);
    CHECK(row.hso_r2 >= 0.9999);
    CHECK(row.d_s == doctest::Approx(2.0 * row.d_f / (row.d_f + 1.0)));
  }
}
