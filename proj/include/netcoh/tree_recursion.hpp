#pragma once

#include <string>
#include <utility>

#include "netcoh/errors.hpp"
#include "netcoh/rational.hpp"

namespace netcoh {

/// Polynomial over exact rationals reduced modulo x^3: only the constant,
/// linear, and quadratic coefficients are tracked.  Multiplication discards
/// degree >= 3.  This is all the information the coherence sums need: for a
/// characteristic polynomial with the zero root divided out, the ratios of
/// these low-order coefficients give the reciprocal eigenvalue sums.
struct TruncPoly {
  Rational c0 = 0, c1 = 0, c2 = 0;

  static TruncPoly one() { return {1, 0, 0}; }

  TruncPoly operator+(const TruncPoly& o) const {
    return {c0 + o.c0, c1 + o.c1, c2 + o.c2};
  }
  TruncPoly operator*(const TruncPoly& o) const {
    return {c0 * o.c0, c0 * o.c1 + c1 * o.c0,
            c0 * o.c2 + c1 * o.c1 + c2 * o.c0};
  }
  TruncPoly scaled(const Rational& k) const { return {k * c0, k * c1, k * c2}; }
  /// Multiply by x (shift up, dropping the old quadratic coefficient).
  TruncPoly xmul() const { return {0, c0, c1}; }
  /// Nonnegative integer power; pow(0) is the constant 1.
  TruncPoly pow(int e) const;

  bool operator==(const TruncPoly& o) const = default;
};

/// The three tracked polynomials of one tree-like fractal generation:
/// Pbar is the characteristic polynomial of the Laplacian with the zero
/// root divided out; Q and R are the companion polynomials the generation
/// step mixes in.
struct TreeRecursionState {
  int m = 0;
  int g = 0;
  TruncPoly Pbar, Q, R;
};

/// Generation-1 state (the (m+3)-node star), by expanding
///   Pbar = (x - (m+3)) (1-x)^{m+1}
///   Q    = (1 - (m+3)x + x^2) (1-x)^m
///   R    = (2 - (m+3)x + x^2) (1-x)^{m-1}
/// modulo x^3.
TreeRecursionState init_generation1(int m);

/// One generation step:
///   Pbar' = (m+2) Q^{m+1} Pbar + (m+1) Q^{m+2}
///   Q'    = Q^{m+2} + (m+1) x R Q^{m+1} + (m+1) x R Q^m Pbar
///   R'    = 2 R Q^{m+1} + (m+1) x R^2 Q^m + m x R^2 Q^{m-1} Pbar
/// (for m = 1 the Q^{m-1} factor is the constant 1).
TreeRecursionState advance_generation(const TreeRecursionState& s);

/// State after iterating the recursion to generation g >= 1.
TreeRecursionState tree_state(int m, int g);

/// Reciprocal eigenvalue sums of the generation-g graph, exactly:
///   S  = -c1/c0 of Pbar,   S2 = (c1/c0)^2 - 2 c2/c0.
Rational tree_S(const TreeRecursionState& s);
Rational tree_S2(const TreeRecursionState& s);
Rational tree_S(int m, int g);
Rational tree_S2(int m, int g);

/// Self-check of the coefficient bookkeeping up to generation g:
///  1. the direct scalar recursions for r^(1), p^(2), q^(2) (expanded from
///     the polynomial recursions coefficient-by-coefficient) reproduce the
///     TruncPoly values at every generation;
///  2. the leading-order ratios p^(0)/-(m+2)^g, p^(1)/(2^g (m+2)^{2g}),
///     p^(2)/-(2^{2g} (m+2)^{3g}), r^(1)/-(2^{2g} (m+2)^g) are positive and
///     within 5% of their limit (estimated 8 generations deeper).
/// Returns true when everything holds; on failure returns false and, if
/// detail is non-null, stores the first offending generation/coefficient.
bool coefficient_recursion_check(int m, int g, std::string* detail = nullptr);

/// Analytic asymptotic exponents (first, second order): H_FO ~ N^{1/d_f},
/// H_SO ~ N^{1 + 2/d_f} with d_f = log(m+2)/log 2.
std::pair<double, double> tree_coherence_exponents(int m);

}  // namespace netcoh
