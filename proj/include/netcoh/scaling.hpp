#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netcoh/errors.hpp"
#include "netcoh/graph.hpp"
#include "netcoh/spectrum.hpp"

namespace netcoh {

/// Least-squares power-law fit value ~ exp(log_prefactor) * N^exponent,
/// computed by ordinary least squares on (log N, log value).
struct ScalingFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (N, value)
};

/// Requires >= 3 points with positive coordinates.
ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points);

/// Least-squares fit value ~ slope * log(N) + intercept (value NOT logged);
/// the r_squared lets a logarithmic growth law compete against a power law.
struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LogLinearFit fit_log_linear(const std::vector<std::pair<double, double>>& points);

/// Breadth-first ball sizes |B(r)| around a center node, r = 0..diameter.
struct BallGrowthProfile {
  int center = 0;
  std::vector<int> radii;
  std::vector<std::int64_t> sizes;  // nondecreasing, last = N
};

BallGrowthProfile ball_growth(const Graph& g, int center);

/// Default fit center: a maximum-degree node, smallest label on ties.
int default_ball_center(const Graph& g);

/// Fractal dimension from ball growth: log-log slope of |B(r)| vs r over
/// the window r in [2, diameter/2].  Throws ValidationError when the
/// diameter is below 8 ("insufficient scaling range").
double estimate_fractal_dimension(const BallGrowthProfile& profile);

/// Spectral dimension from the eigenvalue counting function: twice the
/// log-log slope of rho(x) vs x over the low-eigenvalue window
/// [lambda_2, lambda_{ceil(0.05 N)}].  Needs N >= 500.
double estimate_spectral_dimension(const SpectrumSummary& spectrum);

/// One row of the family summary table: analytic dimensions, predicted
/// coherence exponents in both the d_f form (1/d_f, 1 + 2/d_f) and the d_s
/// form (2/d_s - 1, 4/d_s - 1), and exponents fitted from the exact
/// recursion routes over the 6 largest generations computed.
struct CoherenceTableRow {
  std::string family;  // "tree" or "vicsek"
  int param = 0;       // m or v
  int g_max = 0;
  double d_f = 0.0;
  double d_s = 0.0;
  double hfo_exponent_df = 0.0;
  double hso_exponent_df = 0.0;
  double hfo_exponent_ds = 0.0;
  double hso_exponent_ds = 0.0;
  double hfo_fit = 0.0;
  double hso_fit = 0.0;
  double hfo_r2 = 0.0;
  double hso_r2 = 0.0;
};

/// Rows for tree m = 1..3 and vicsek v = 3..5 at generation depths chosen
/// so N >= 10^5, using the exact recursions (no eigensolves).
std::vector<CoherenceTableRow> coherence_table(double beta);

}  // namespace netcoh
