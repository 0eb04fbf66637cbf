#include "netcoh/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "netcoh/coherence.hpp"
#include "netcoh/generators.hpp"
#include "netcoh/tree_recursion.hpp"
#include "netcoh/vicsek_recursion.hpp"

namespace netcoh {

namespace {

struct Ols {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

Ols least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("degenerate fit: all x equal");
  Ols out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  // r^2 = 1 - SS_res / SS_tot; syy == 0 means a perfectly flat target,
  // which the straight line reproduces exactly.
  if (syy == 0.0) {
    out.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double resid = ys[i] - (out.intercept + out.slope * xs[i]);
      ss_res += resid * resid;
    }
    out.r_squared = 1.0 - ss_res / syy;
  }
  return out;
}

}  // namespace

ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw ValidationError("exponent fit needs at least 3 points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [n, value] : points) {
    if (n <= 0 || value <= 0)
      throw ValidationError("exponent fit needs positive coordinates");
    xs.push_back(std::log(n));
    ys.push_back(std::log(value));
  }
  Ols ols = least_squares(xs, ys);
  ScalingFit fit;
  fit.exponent = ols.slope;
  fit.log_prefactor = ols.intercept;
  fit.r_squared = ols.r_squared;
  fit.points = points;
  return fit;
}

LogLinearFit fit_log_linear(
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw ValidationError("log-linear fit needs at least 3 points");
  std::vector<double> xs, ys;
  for (const auto& [n, value] : points) {
    if (n <= 0) throw ValidationError("log-linear fit needs positive N");
    xs.push_back(std::log(n));
    ys.push_back(value);
  }
  Ols ols = least_squares(xs, ys);
  return {ols.slope, ols.intercept, ols.r_squared};
}

BallGrowthProfile ball_growth(const Graph& g, int center) {
  if (!is_connected(g))
    throw ValidationError("ball growth requires a connected graph");
  auto dist = bfs_distances(g, center);
  int diameter = *std::max_element(dist.begin(), dist.end());
  std::vector<std::int64_t> counts(static_cast<std::size_t>(diameter) + 1, 0);
  for (int d : dist) counts[static_cast<std::size_t>(d)] += 1;
  BallGrowthProfile profile;
  profile.center = center;
  std::int64_t running = 0;
  for (int r = 0; r <= diameter; ++r) {
    running += counts[static_cast<std::size_t>(r)];
    profile.radii.push_back(r);
    profile.sizes.push_back(running);
  }
  return profile;
}

int default_ball_center(const Graph& g) {
  std::vector<int> degree(g.num_nodes, 0);
  for (const auto& [u, v] : g.edges) {
    degree[u] += 1;
    degree[v] += 1;
  }
  int best = 0;
  for (int i = 1; i < g.num_nodes; ++i)
    if (degree[i] > degree[best]) best = i;  // ties keep the smaller label
  return best;
}

double estimate_fractal_dimension(const BallGrowthProfile& profile) {
  const int diameter = profile.radii.back();
  if (diameter < 8)
    throw ValidationError(
        "insufficient scaling range: ball-growth fit needs diameter >= 8");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    int r = profile.radii[i];
    if (r >= 2 && r <= diameter / 2)
      pts.emplace_back(static_cast<double>(r),
                       static_cast<double>(profile.sizes[i]));
  }
  // Reuse the power-law machinery: |B(r)| ~ r^{d_f}.
  return fit_exponent(pts).exponent;
}

double estimate_spectral_dimension(const SpectrumSummary& spectrum) {
  const std::size_t n = spectrum.eigenvalues.size();
  if (n < 500)
    throw ValidationError("spectral dimension estimate needs N >= 500");
  // Window: [lambda_2, lambda at index ceil(0.05 N)] (1-based indexing).
  std::size_t hi_index =
      static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n)));
  if (hi_index < 3) hi_index = 3;
  const double lo = spectrum.eigenvalues[1];
  const double hi = spectrum.eigenvalues[hi_index - 1];
  if (!(hi > lo))
    throw ValidationError("degenerate spectral-dimension window");
  // A degenerate eigenvalue comes out of the dense solver as a run of values
  // a few ulp apart; rho at any member of the run must count the whole run.
  // A relative tolerance absorbs that jitter when counting and when testing
  // the window edges.
  constexpr double kSlack = 1e-12;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 1; i < n; ++i) {
    const double lam = spectrum.eigenvalues[i];
    if (lam < lo * (1.0 - kSlack) || lam > hi * (1.0 + kSlack)) continue;
    auto run_end = std::upper_bound(spectrum.eigenvalues.begin(),
                                    spectrum.eigenvalues.end(),
                                    lam * (1.0 + kSlack));
    pts.emplace_back(
        lam, static_cast<double>(run_end - spectrum.eigenvalues.begin()));
  }
  if (pts.size() < 3)
    throw ValidationError("degenerate spectral-dimension window");
  return 2.0 * fit_exponent(pts).exponent;
}

std::vector<CoherenceTableRow> coherence_table(double beta) {
  if (beta <= 0) throw ValidationError("beta must be > 0");
  // Generation depths put every family at N >= 10^5 while the exact
  // recursions stay cheap.
  const std::vector<std::tuple<std::string, int, int>> specs = {
      {"tree", 1, 12}, {"tree", 2, 10}, {"tree", 3, 9},
      {"vicsek", 3, 10}, {"vicsek", 4, 9}, {"vicsek", 5, 8},
  };
  std::vector<CoherenceTableRow> rows;
  for (const auto& [family, param, g_max] : specs) {
    CoherenceTableRow row;
    row.family = family;
    row.param = param;
    row.g_max = g_max;
    const bool is_tree = family == "tree";
    DimensionInfo dims = analytic_dimensions(
        is_tree ? tree_spec(param, g_max) : vicsek_spec(param, g_max));
    row.d_f = dims.d_f;
    row.d_s = dims.d_s;
    auto [efo, eso] = is_tree ? tree_coherence_exponents(param)
                              : vicsek_coherence_exponents(param);
    row.hfo_exponent_df = efo;
    row.hso_exponent_df = eso;
    row.hfo_exponent_ds = 2.0 / dims.d_s - 1.0;
    row.hso_exponent_ds = 4.0 / dims.d_s - 1.0;

    std::vector<std::pair<double, double>> fo_pts, so_pts;
    for (int g = g_max - 5; g <= g_max; ++g) {
      double n = static_cast<double>(is_tree ? tree_like_node_count(param, g)
                                             : vicsek_node_count(param, g));
      double S = rational_to_double(is_tree ? tree_S(param, g)
                                            : vicsek_S(param, g));
      double S2 = rational_to_double(is_tree ? tree_S2(param, g)
                                             : vicsek_S2(param, g));
      fo_pts.emplace_back(n, S / (2.0 * beta * n));
      so_pts.emplace_back(n, S2 / (2.0 * beta * beta * n));
    }
    ScalingFit fo = fit_exponent(fo_pts);
    ScalingFit so = fit_exponent(so_pts);
    row.hfo_fit = fo.exponent;
    row.hso_fit = so.exponent;
    row.hfo_r2 = fo.r_squared;
    row.hso_r2 = so.r_squared;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace netcoh
