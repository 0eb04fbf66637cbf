#include "netcoh/tree_recursion.hpp"

#include <array>
#include <cmath>

namespace netcoh {

TruncPoly TruncPoly::pow(int e) const {
  if (e < 0) throw ValidationError("TruncPoly power must be >= 0");
  TruncPoly out = TruncPoly::one();
  TruncPoly base = *this;
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

namespace {

// (1 - x)^k modulo x^3: 1 - k x + k(k-1)/2 x^2.
TruncPoly one_minus_x_pow(int k) {
  Rational kk = k;
  return {1, -kk, kk * (kk - 1) / 2};
}

}  // namespace

TreeRecursionState init_generation1(int m) {
  if (m < 1) throw ValidationError("tree recursion needs m >= 1");
  TruncPoly lin_pbar{Rational(-(m + 3)), 1, 0};       // x - (m+3)
  TruncPoly quad_q{1, Rational(-(m + 3)), 1};         // 1 - (m+3)x + x^2
  TruncPoly quad_r{2, Rational(-(m + 3)), 1};         // 2 - (m+3)x + x^2
  TreeRecursionState s;
  s.m = m;
  s.g = 1;
  s.Pbar = lin_pbar * one_minus_x_pow(m + 1);
  s.Q = quad_q * one_minus_x_pow(m);
  s.R = quad_r * one_minus_x_pow(m - 1);
  return s;
}

TreeRecursionState advance_generation(const TreeRecursionState& s) {
  const int m = s.m;
  const Rational m1 = m + 1, m2 = m + 2;
  const TruncPoly qm1 = s.Q.pow(m + 1);
  const TruncPoly qm = s.Q.pow(m);
  const TruncPoly qm_1 = s.Q.pow(m - 1);
  const TruncPoly r2 = s.R * s.R;

  TreeRecursionState out;
  out.m = m;
  out.g = s.g + 1;
  out.Pbar = (qm1 * s.Pbar).scaled(m2) + (qm1 * s.Q).scaled(m1);
  out.Q = qm1 * s.Q + (s.R * qm1).xmul().scaled(m1) +
          (s.R * qm * s.Pbar).xmul().scaled(m1);
  out.R = (s.R * qm1).scaled(2) + (r2 * qm).xmul().scaled(m1) +
          (r2 * qm_1 * s.Pbar).xmul().scaled(m);
  return out;
}

TreeRecursionState tree_state(int m, int g) {
  if (g < 1) throw ValidationError("tree recursion needs g >= 1");
  TreeRecursionState s = init_generation1(m);
  while (s.g < g) s = advance_generation(s);
  return s;
}

Rational tree_S(const TreeRecursionState& s) {
  if (s.Pbar.c0 == 0) throw InvariantError("tree recursion: zero constant term");
  return -s.Pbar.c1 / s.Pbar.c0;
}

Rational tree_S2(const TreeRecursionState& s) {
  if (s.Pbar.c0 == 0) throw InvariantError("tree recursion: zero constant term");
  Rational ratio = s.Pbar.c1 / s.Pbar.c0;
  return ratio * ratio - 2 * s.Pbar.c2 / s.Pbar.c0;
}

Rational tree_S(int m, int g) { return tree_S(tree_state(m, g)); }
Rational tree_S2(int m, int g) { return tree_S2(tree_state(m, g)); }

namespace {

// Direct scalar recursions for the r^(1), p^(2), q^(2) coefficients,
// expanded coefficient-by-coefficient from the polynomial recursions.
// They consume all eight tracked coefficients of generation g and return
// the three generation-g+1 values.
struct ScalarTriple {
  Rational r1, p2, q2;
};

ScalarTriple scalar_step(int m, const TreeRecursionState& s) {
  const Rational p0 = s.Pbar.c0, p1 = s.Pbar.c1, p2 = s.Pbar.c2;
  const Rational q0 = s.Q.c0, q1 = s.Q.c1, q2 = s.Q.c2;
  const Rational r0 = s.R.c0, r1 = s.R.c1;
  const Rational M = m, M1 = m + 1, M2 = m + 2;
  auto q0p = [&](int e) { return rpow(q0, static_cast<unsigned>(e)); };

  ScalarTriple out;
  out.r1 = 2 * q0p(m + 1) * r1 + 2 * M1 * r0 * q0p(m) * q1 +
           M1 * r0 * r0 * q0p(m) + M * r0 * r0 * q0p(m - 1) * p0;
  out.p2 = M2 * q0p(m + 1) * p2 + M1 * M2 * q0p(m) * q2 * p0 +
           M * M1 * M2 / 2 * q0p(m - 1) * q1 * q1 * p0 +
           M1 * M2 * q0p(m) * q1 * p1 + M1 * M2 * q0p(m + 1) * q2 +
           M1 * M1 * M2 / 2 * q0p(m) * q1 * q1;
  out.q2 = M2 * q0p(m + 1) * q2 + M1 * M2 / 2 * q0p(m) * q1 * q1 +
           M1 * r1 * q0p(m + 1) + M1 * M1 * r0 * q0p(m) * q1 +
           M1 * q0p(m) * p0 * r1 + M * M1 * r0 * p0 * q0p(m - 1) * q1 +
           M1 * r0 * q0p(m) * p1;
  return out;
}

bool ratio_converged(const Rational& value, const Rational& scale,
                     const Rational& ref_value, const Rational& ref_scale) {
  // Compare value/scale against its deeper-generation counterpart; both
  // must be positive and agree within 5%.
  Rational ratio = value / scale;
  Rational ref = ref_value / ref_scale;
  if (ratio <= 0 || ref <= 0) return false;
  Rational rel = ratio / ref - 1;
  if (rel < 0) rel = -rel;
  return rel <= Rational(1, 20);
}

}  // namespace

bool coefficient_recursion_check(int m, int g, std::string* detail) {
  if (g < 2) throw ValidationError("coefficient check needs g >= 2");
  auto fail = [&](const std::string& msg) {
    if (detail) *detail = msg;
    return false;
  };

  // 1. scalar recursions agree with the polynomial route at every step.
  TreeRecursionState s = init_generation1(m);
  for (int gen = 1; gen < g; ++gen) {
    ScalarTriple expect = scalar_step(m, s);
    s = advance_generation(s);
    if (s.R.c1 != expect.r1)
      return fail("r^(1) mismatch at generation " + std::to_string(s.g));
    if (s.Pbar.c2 != expect.p2)
      return fail("p^(2) mismatch at generation " + std::to_string(s.g));
    if (s.Q.c2 != expect.q2)
      return fail("q^(2) mismatch at generation " + std::to_string(s.g));
  }

  // 2. leading-order ratios settle: compare generation g against a state 8
  // generations deeper as the limit proxy.
  TreeRecursionState deep = s;
  for (int extra = 0; extra < 8; ++extra) deep = advance_generation(deep);
  const Rational m2 = m + 2;
  auto scales = [&](const TreeRecursionState& st) {
    const unsigned gg = static_cast<unsigned>(st.g);
    Rational p0s = -rpow(m2, gg);
    Rational p1s = rpow(2, gg) * rpow(m2, 2 * gg);
    Rational p2s = -rpow(2, 2 * gg) * rpow(m2, 3 * gg);
    Rational r1s = -rpow(2, 2 * gg) * rpow(m2, gg);
    return std::array<Rational, 4>{p0s, p1s, p2s, r1s};
  };
  auto sc = scales(s), scd = scales(deep);
  const std::array<Rational, 4> vals{s.Pbar.c0, s.Pbar.c1, s.Pbar.c2, s.R.c1};
  const std::array<Rational, 4> vald{deep.Pbar.c0, deep.Pbar.c1, deep.Pbar.c2,
                                     deep.R.c1};
  const char* names[] = {"p^(0)", "p^(1)", "p^(2)", "r^(1)"};
  for (int i = 0; i < 4; ++i)
    if (!ratio_converged(vals[i], sc[i], vald[i], scd[i]))
      return fail(std::string("leading-order ratio for ") + names[i] +
                  " not settled at generation " + std::to_string(g));
  return true;
}

std::pair<double, double> tree_coherence_exponents(int m) {
  if (m < 1) throw ValidationError("tree family needs m >= 1");
  double d_f = std::log(m + 2.0) / std::log(2.0);
  return {1.0 / d_f, 1.0 + 2.0 / d_f};
}

}  // namespace netcoh
