#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "netcoh/errors.hpp"
#include "netcoh/rational.hpp"

namespace netcoh {

/// The three real roots of x^3 - (v+4) x^2 + 3(v+1) x - parent = 0,
/// ascending.  Each Laplacian eigenvalue of a Vicsek generation descends to
/// exactly these three eigenvalues of the next generation.  Roots come from
/// a companion-matrix eigensolve polished by one Newton step; complex roots
/// (impossible for valid inputs) raise InvariantError.
std::array<double, 3> cubic_children(double parent, int v);

/// Multiplicity of eigenvalue 1 at generation k: (v-2)(v+1)^{k-1} + 1.
BigInt delta(int v, int k);

/// Exact per-generation sums for the Vicsek family.
///
/// gamma_nd[i] = 3^i (v+1)^{i-1}: reciprocal-sum weight of the lineage
/// descending from the single nondegenerate ancestor eigenvalue v+1, after i
/// descent steps (gamma_nd[0] = 1/(v+1)).  gamma_deg[i] = 3^i (v+1)^i is the
/// same for a lineage rooted at eigenvalue 1.  theta_* are the squared-
/// reciprocal analogues, via
///     theta[i] = (3(v+1))^2 theta[i-1] - 2(v+4) gamma[i-1].
/// deltas[k-1] = multiplicity of eigenvalue 1 at generation k.
struct VicsekSums {
  int v = 0;
  int g = 0;
  std::vector<Rational> gamma_nd, gamma_deg, theta_nd, theta_deg;  // i = 0..g-1
  std::vector<BigInt> deltas;                                      // k = 1..g
  Rational S = 0;   // sum over i of gamma_nd[i] + delta(g-i) * gamma_deg[i]
  Rational S2 = 0;  // same with theta in place of gamma
};

VicsekSums vicsek_sums(int v, int g);

/// Reciprocal eigenvalue sum at generation g, exactly.  Verifies the direct
/// summation against the independent closed form
///   (v-2)(v+1)^{g-1}(3^g-1)/2 + ((v+2)/(v+1)) (3^g (v+1)^g - 1)/(3v+2)
/// and raises InvariantError on disagreement.
Rational vicsek_S(int v, int g);

/// Squared-reciprocal eigenvalue sum at generation g, exactly.
Rational vicsek_S2(int v, int g);

/// Individual theta values (exact recursion evaluation), i >= 0.
Rational theta_nd(int v, int i);
Rational theta_deg(int v, int i);

/// Full eigenvalue multiset of one generation, as (value, multiplicity)
/// sorted by value.
struct VicsekSpectrum {
  int v = 0;
  int g = 0;
  std::vector<std::pair<double, std::int64_t>> values;

  std::int64_t total_multiplicity() const;
  /// Multiplicity of eigenvalue exactly 1 (the fresh degenerate value).
  std::int64_t multiplicity_of_one() const;
  /// Flattened ascending eigenvalue list (each value repeated).
  std::vector<double> flatten() const;
};

/// Spectrum by generation descent instead of an eigensolve.  Generation 1
/// is {0, 1 x (v-1), v+1}.  Step g -> g+1:
///   - every eigenvalue (including 0) is replaced by its three cubic
///     children, each inheriting the parent's multiplicity;
///   - of the children {0, 3, v+1} of the zero eigenvalue, the root at 3 is
///     spurious (the new graph still has a single zero mode and the v+1
///     survivor) and is dropped;
///   - eigenvalue 1 is injected fresh with multiplicity (v-2) N_g + 1,
///     which equals its total multiplicity since 1 is never a cubic child
///     (that would need parent 2v, above the spectral radius).
/// Total count (v+1)^{g+1} and multiplicity-of-1 = delta(g+1) are asserted.
VicsekSpectrum reconstruct_spectrum(int v, int g);

/// Analytic asymptotic exponents (first, second order): H_FO ~ N^{1/d_f},
/// H_SO ~ N^{1 + 2/d_f} with d_f = log(v+1)/log 3.
std::pair<double, double> vicsek_coherence_exponents(int v);

}  // namespace netcoh
