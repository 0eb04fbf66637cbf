#include "netcoh/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netcoh/generators.hpp"

namespace netcoh {

namespace {

int count_below_tolerance(const SpectrumSummary& s) {
  return static_cast<int>(std::count_if(
      s.eigenvalues.begin(), s.eigenvalues.end(),
      [&](double x) { return std::abs(x) <= s.zero_tolerance; }));
}

void require_connected_spectrum(const SpectrumSummary& s) {
  int zeros = count_below_tolerance(s);
  if (zeros != 1)
    throw InvariantError(
        "expected exactly one zero eigenvalue, found " +
        std::to_string(zeros) + ": disconnected or tolerance misconfigured");
}

}  // namespace

std::vector<double> eigenvalues(const Eigen::MatrixXd& L) {
  const auto n = L.rows();
  if (n != L.cols()) throw ValidationError("eigensolve input must be square");
  if (n > max_dense_nodes())
    throw ResourceError("dense eigensolve of size " + std::to_string(n) +
                        " exceeds cap " + std::to_string(max_dense_nodes()) +
                        " (raise NETCOH_MAX_DENSE or --max-dense)");
  if (!L.isApprox(L.transpose(), 1e-12))
    throw ValidationError("eigensolve input must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw InvariantError("symmetric eigensolve failed to converge");
  std::vector<double> vals(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + n);
  std::sort(vals.begin(), vals.end());
  return vals;
}

SpectrumSummary spectrum_summary(const Eigen::MatrixXd& L) {
  SpectrumSummary s;
  s.eigenvalues = eigenvalues(L);
  double max_abs = 0.0;
  for (double x : s.eigenvalues) max_abs = std::max(max_abs, std::abs(x));
  s.zero_tolerance = 1e-9 * static_cast<double>(s.eigenvalues.size()) * max_abs;
  s.S = inverse_sum(s);
  s.S2 = inverse_square_sum(s);
  return s;
}

int counting_function(const SpectrumSummary& s, double x) {
  if (x < 0) throw ValidationError("counting function argument must be >= 0");
  return static_cast<int>(std::count_if(
      s.eigenvalues.begin(), s.eigenvalues.end(),
      [x](double lam) { return std::abs(lam) <= x; }));
}

double inverse_sum(const SpectrumSummary& s) {
  require_connected_spectrum(s);
  double sum = 0.0;
  for (double lam : s.eigenvalues)
    if (std::abs(lam) > s.zero_tolerance) sum += 1.0 / lam;
  return sum;
}

double inverse_square_sum(const SpectrumSummary& s) {
  require_connected_spectrum(s);
  double sum = 0.0;
  for (double lam : s.eigenvalues)
    if (std::abs(lam) > s.zero_tolerance) sum += 1.0 / (lam * lam);
  return sum;
}

}  // namespace netcoh
