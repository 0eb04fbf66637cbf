#include "netcoh/vicsek_recursion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "netcoh/generators.hpp"

namespace netcoh {

std::array<double, 3> cubic_children(double parent, int v) {
  if (parent < 0) throw ValidationError("cubic parent must be >= 0");
  if (v < 2) throw ValidationError("vicsek family needs v >= 2");
  const double b = -(v + 4.0), c = 3.0 * (v + 1.0), d = -parent;
  // Companion matrix of x^3 + b x^2 + c x + d; robust near repeated roots.
  Eigen::Matrix3d comp;
  comp << 0, 0, -d,
          1, 0, -c,
          0, 1, -b;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(comp);
  std::array<double, 3> roots{};
  for (int i = 0; i < 3; ++i) {
    auto root = solver.eigenvalues()(i);
    if (std::abs(root.imag()) > 1e-8 * (1.0 + std::abs(root.real())))
      throw InvariantError("cubic child relation produced a complex root");
    double x = root.real();
    // One Newton polish against the exact cubic.
    double f = ((x + b) * x + c) * x + d;
    double fp = (3.0 * x + 2.0 * b) * x + c;
    if (fp != 0.0) x -= f / fp;
    roots[i] = x;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

BigInt delta(int v, int k) {
  if (v < 2) throw ValidationError("vicsek family needs v >= 2");
  if (k < 1) throw ValidationError("delta needs generation k >= 1");
  return BigInt(v - 2) * ipow(v + 1, static_cast<unsigned>(k - 1)) + 1;
}

VicsekSums vicsek_sums(int v, int g) {
  if (v < 2) throw ValidationError("vicsek family needs v >= 2");
  if (g < 1) throw ValidationError("vicsek sums need g >= 1");
  VicsekSums out;
  out.v = v;
  out.g = g;
  const Rational v1 = v + 1;
  const Rational sq = 9 * v1 * v1;        // (3(v+1))^2
  const Rational twice_b = 2 * (v + 4);   // 2(v+4)

  Rational gnd = 1 / v1;       // gamma_nd[0]
  Rational gdg = 1;            // gamma_deg[0]
  Rational tnd = 1 / (v1 * v1);  // theta_nd[0]
  Rational tdg = 1;              // theta_deg[0]
  for (int i = 0; i < g; ++i) {
    out.gamma_nd.push_back(gnd);
    out.gamma_deg.push_back(gdg);
    out.theta_nd.push_back(tnd);
    out.theta_deg.push_back(tdg);
    tnd = sq * tnd - twice_b * gnd;
    tdg = sq * tdg - twice_b * gdg;
    gnd *= 3 * v1;
    gdg *= 3 * v1;
  }
  for (int k = 1; k <= g; ++k) out.deltas.push_back(delta(v, k));

  for (int i = 0; i < g; ++i) {
    Rational mult(out.deltas[static_cast<std::size_t>(g - i - 1)]);
    out.S += out.gamma_nd[i] + mult * out.gamma_deg[i];
    out.S2 += out.theta_nd[i] + mult * out.theta_deg[i];
  }
  return out;
}

Rational vicsek_S(int v, int g) {
  VicsekSums sums = vicsek_sums(v, g);
  // Independent closed form; disagreement means the recursion bookkeeping
  // broke, which is an internal invariant violation.
  const unsigned ug = static_cast<unsigned>(g);
  Rational closed =
      Rational(BigInt(v - 2) * ipow(v + 1, ug - 1) * (ipow(3, ug) - 1)) / 2 +
      Rational(v + 2, v + 1) *
          Rational(ipow(3, ug) * ipow(v + 1, ug) - 1) / (3 * v + 2);
  if (sums.S != closed)
    throw InvariantError("vicsek reciprocal sum disagrees with closed form");
  return sums.S;
}

Rational vicsek_S2(int v, int g) { return vicsek_sums(v, g).S2; }

Rational theta_nd(int v, int i) {
  if (i < 0) throw ValidationError("theta index must be >= 0");
  return vicsek_sums(v, i + 1).theta_nd.back();
}

Rational theta_deg(int v, int i) {
  if (i < 0) throw ValidationError("theta index must be >= 0");
  return vicsek_sums(v, i + 1).theta_deg.back();
}

std::int64_t VicsekSpectrum::total_multiplicity() const {
  std::int64_t total = 0;
  for (const auto& [value, mult] : values) total += mult;
  return total;
}

std::int64_t VicsekSpectrum::multiplicity_of_one() const {
  std::int64_t total = 0;
  for (const auto& [value, mult] : values)
    if (value == 1.0) total += mult;
  return total;
}

std::vector<double> VicsekSpectrum::flatten() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(total_multiplicity()));
  for (const auto& [value, mult] : values)
    for (std::int64_t i = 0; i < mult; ++i) out.push_back(value);
  return out;
}

VicsekSpectrum reconstruct_spectrum(int v, int g) {
  if (v < 2) throw ValidationError("vicsek family needs v >= 2");
  if (g < 1) throw ValidationError("vicsek spectrum needs g >= 1");
  VicsekSpectrum spec;
  spec.v = v;
  spec.g = 1;
  spec.values = {{0.0, 1}, {1.0, v - 1}, {v + 1.0, 1}};

  for (int gen = 1; gen < g; ++gen) {
    const std::int64_t n_prev = vicsek_node_count(v, gen);
    std::vector<std::pair<double, std::int64_t>> next;
    next.reserve(spec.values.size() * 3 + 1);
    for (const auto& [value, mult] : spec.values) {
      if (value == 0.0) {
        // Children of 0 are {0, 3, v+1}; the middle root is spurious.
        next.emplace_back(0.0, mult);
        next.emplace_back(v + 1.0, mult);
        continue;
      }
      for (double child : cubic_children(value, v))
        next.emplace_back(child, mult);
    }
    next.emplace_back(1.0, static_cast<std::int64_t>(v - 2) * n_prev + 1);
    std::sort(next.begin(), next.end());
    spec.values = std::move(next);
    spec.g = gen + 1;
  }

  const std::int64_t expect_total = vicsek_node_count(v, g);
  if (spec.total_multiplicity() != expect_total)
    throw InvariantError("vicsek spectrum reconstruction lost eigenvalues");
  if (BigInt(spec.multiplicity_of_one()) != delta(v, g))
    throw InvariantError(
        "vicsek spectrum reconstruction: wrong multiplicity of eigenvalue 1");
  return spec;
}

std::pair<double, double> vicsek_coherence_exponents(int v) {
  if (v < 2) throw ValidationError("vicsek family needs v >= 2");
  double d_f = std::log(v + 1.0) / std::log(3.0);
  return {1.0 / d_f, 1.0 + 2.0 / d_f};
}

}  // namespace netcoh
