// Membership tests for the polynomial classes P_2k and positivity
// certification of polynomials used as bases of real-power symbols.
#pragma once

#include "anhosc/polynomial.hpp"

namespace anhosc {

inline constexpr int kDefaultSphereSamples = 10000;
inline constexpr long kDefaultProbeBudget = 200000;

struct P2kDecision {
  bool member = false;
  double min_on_sphere = 0.0;  // sampled minimum of the degree-2k form
};

// Sampled membership test for P_2k: the degree-2k leading form must have
// strictly positive minimum over the sampled unit sphere and deg(p) = 2k.
// Sound for reporting a violation; membership certified only up to the
// sampling resolution.  degree(p) > 2k is a contract violation.
P2kDecision is_in_P2k(const Polynomial& p, int k, int sphere_samples = kDefaultSphereSamples);

struct PositivityCertificate {
  bool certified = false;
  double witness_min = 0.0;          // best minimum candidate found
  std::vector<double> witness_point;  // argmin, or the violating point
  double box_radius = 0.0;           // certified reduction radius (max over blocks)
  std::string reason;                // "ok", "violation", "leading-form", "constant"
};

// Certifies p > 0 on all of R^dim.  Strategy: split p into additively
// independent variable blocks; for each block the leading form must be
// sphere-positive, which yields an explicit radius beyond which the
// polynomial dominates every other block's global floor.  Inside the
// remaining box a grid search (size ~ probe_budget) produces the minimum
// candidate.  A non-positive sample refutes with a witness point.
PositivityCertificate is_strictly_positive(const Polynomial& p,
                                           long probe_budget = kDefaultProbeBudget);

}  // namespace anhosc
