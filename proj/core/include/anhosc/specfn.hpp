// Spectral zeta with tail completion, eigenvalue-counting fits against the
// phase-space volume exponent, Schatten threshold verdicts for negative
// powers, and singular-value decay fits.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "anhosc/spectrum.hpp"

namespace anhosc {

// Tail model lambda_j ~ c (j + delta)^rho.  rho is pinned to the
// theoretical 2kl/(n(k+l)) whenever the empirical log-log fit lands within
// 5% of it; (c, delta) come from a linear fit of lambda^(1/rho) over the
// upper half of the converged range.
struct GrowthFit {
  double c = 1.0;
  double rho = 1.0;
  double delta = 0.0;
  double rho_empirical = 1.0;
  bool snapped = false;  // empirical rho replaced by the theoretical one
  double resid_rel = 0.0;  // max relative model error on the fit window
  int j_lo = 0, j_hi = 0;
};
GrowthFit fit_growth(const Spectrum& s);

struct ZetaResult {
  double s = 0.0;
  double partial_sum = 0.0;
  double tail_estimate = 0.0;
  double value = 0.0;
  double abscissa_estimate = 0.0;  // n(k+l)/(2kl) via the growth fit
  double error_bar = 0.0;
  int j_cut = 0;
  std::string to_json() const;
};
// Requires a strictly positive converged range and s > abscissa + 0.1.
ZetaResult zeta(const Spectrum& sp, double s, int j_cut_max = 200);

struct CountingFit {
  std::vector<double> lambda;  // staircase corners over the fit window
  std::vector<long> counts;    // N(lambda) at those corners
  double exponent = 0.0;
  double constant = 0.0;
  double volume_exponent = 0.0;  // n(1/2k + 1/2l)
  std::string to_json() const;
};
// Least-squares fit of log N(lambda) vs log lambda over the upper half of
// the converged range; requires >= 30 converged eigenvalues.
CountingFit counting_fit(const Spectrum& sp);

struct SchattenReport {
  int k = 1, l = 1, n = 1;
  double r = 1.0, mu = 1.0;
  double threshold = 0.0;         // (k+l) n / (2 k l r)
  double threshold_estimate = 0.0;  // 1 / (r * rho_hat)
  std::string verdict;            // convergent | divergent | inconclusive
  bool near_margin = false;       // |mu - threshold_estimate| <= margin
  double fit_exponent = 0.0;      // per-term decay of (lambda_j+shift)^(-mu r)
  double margin = 0.05;
  std::string to_json() const;
};
// verdict from the growth fit: sum (lambda_j + shift)^(-mu r) converges iff
// mu r rho > 1; inconclusive inside the +-margin band around the estimated
// threshold.  shift defaults to p0 + q0 of the underlying spec.
SchattenReport schatten_verdict(const Spectrum& sp, double mu, double r,
                                double shift = -1.0, double margin = 0.05);

struct SvDecayFit {
  double exponent = 0.0;
  double r = 1.0;
  bool passes_small_o = false;
  bool tail_decreasing = false;  // s_j j^(1/r) decreasing blockwise, last third
  long used = 0;                 // values above the noise floor
  std::string to_json() const;
};
// Fits s_j ~ j^(-e) over the upper half of the above-floor sequence;
// passes_small_o = (e > 1/r + 0.05) or blockwise-decreasing tail.
SvDecayFit sv_decay_fit(std::span<const double> sv_descending, double r);

}  // namespace anhosc
