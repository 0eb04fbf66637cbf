#pragma once

#include <Eigen/Dense>

#include <vector>

#include "netcoh/errors.hpp"

namespace netcoh {

/// Laplacian spectrum together with the derived reciprocal sums.
///
/// zero_tolerance separates the structural zero eigenvalue of a connected
/// graph from genuinely positive ones; eigenvalues below it are treated as
/// zero.  S and S2 are the sums of reciprocals (resp. squared reciprocals)
/// of the eigenvalues above the tolerance.
struct SpectrumSummary {
  std::vector<double> eigenvalues;  // ascending
  double zero_tolerance = 0.0;      // 1e-9 * N * max|lambda|
  double S = 0.0;
  double S2 = 0.0;
};

/// Ascending eigenvalues of a symmetric matrix (values only).
/// Throws ResourceError above the dense cap and ValidationError when the
/// input is not symmetric.
std::vector<double> eigenvalues(const Eigen::MatrixXd& L);

/// Full summary: eigenvalues, tolerance, and S/S2.
/// Throws InvariantError when the eigenvalue count below tolerance is not
/// exactly one ("disconnected or tolerance misconfigured").
SpectrumSummary spectrum_summary(const Eigen::MatrixXd& L);

/// Number of eigenvalues with magnitude <= x (zero eigenvalue included).
int counting_function(const SpectrumSummary& s, double x);

/// Reciprocal sums over the eigenvalues above zero_tolerance.  Both throw
/// InvariantError unless exactly one eigenvalue sits below the tolerance.
double inverse_sum(const SpectrumSummary& s);
double inverse_square_sum(const SpectrumSummary& s);

}  // namespace netcoh
