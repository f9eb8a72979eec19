// Split phase-space metrics and sampled falsification checks of the
// Hörmander-metric axioms (slowness, uncertainty, temperateness) and of the
// g-weight axioms.  Every check can refute, never prove; reported constants
// are minimal passing lattice points, i.e. upper bounds.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anhosc/oscillator.hpp"

namespace anhosc {

struct MetricAt {
  double a = 1.0;  // x-denominator, W^(1/k) for the oscillator metric
  double b = 1.0;  // xi-denominator, W^(1/l)

  double lambda() const { return std::sqrt(a * b); }
  double planck() const { return 1.0 / lambda(); }
  // g_X(T) for T = (t, tau) split into the first/last n coordinates
  double quad(std::span<const double> T, int n) const;
  // symplectic dual: g^sigma_X(T) = b|t|^2 + a|tau|^2
  double quad_sigma(std::span<const double> T, int n) const;
};

MetricAt metric_at(const OscillatorSpec& spec, std::span<const double> X);

using SplitMetricFn = std::function<MetricAt(std::span<const double>)>;
using WeightFn = std::function<double(std::span<const double>)>;

SplitMetricFn metric_of(const OscillatorSpec& spec);
// Broken-slowness fixture: the x-denominator exponent 1/k is replaced.
SplitMetricFn corrupted_metric(const OscillatorSpec& spec, double x_exponent);
// The (rho,delta)=(1,0) comparison metric: a = 1, b = 1 + |xi|^2.
SplitMetricFn g10_metric();

struct AxiomViolation {
  std::vector<double> X, Y;  // Y empty for single-point axioms
  double lhs = 0.0, rhs = 0.0;
};

struct AxiomReport {
  std::string axiom;  // slowness | uncertainty | temperateness |
                      // weight-continuity | weight-temperateness
  bool pass = false;
  double C = 0.0;       // minimal passing lattice constant (0 if n/a)
  int N = -1;           // minimal passing lattice power (-1 if n/a)
  long samples = 0;
  std::uint64_t seed = 0;
  std::vector<AxiomViolation> violations;
  std::string note = "sampled falsification test: can refute, never prove";
  std::string to_json() const;
};

std::vector<double> default_C_lattice();  // {1, 10, ..., 1e6}
std::vector<int> default_N_lattice();     // {1, ..., 8}

AxiomReport check_slowness(const SplitMetricFn& g, int n, long pair_samples,
                           std::span<const double> C_lattice, std::uint64_t seed);
AxiomReport check_uncertainty(const SplitMetricFn& g, int n, long samples, std::uint64_t seed);
AxiomReport check_temperateness(const SplitMetricFn& g, int n, long pair_samples,
                                std::span<const double> C_lattice,
                                std::span<const int> N_lattice, std::uint64_t seed);
AxiomReport check_weight_continuity(const SplitMetricFn& g, const WeightFn& M, int n,
                                    long pair_samples, std::span<const double> C_lattice,
                                    std::uint64_t seed);
AxiomReport check_weight_temperateness(const SplitMetricFn& g, const WeightFn& M, int n,
                                       long pair_samples, std::span<const double> C_lattice,
                                       std::span<const int> N_lattice, std::uint64_t seed);

// spec-level conveniences (canonical metric, exact lambda_g formula)
AxiomReport check_slowness(const OscillatorSpec& spec, long pair_samples, std::uint64_t seed);
AxiomReport check_uncertainty(const OscillatorSpec& spec, long samples, std::uint64_t seed);
AxiomReport check_temperateness(const OscillatorSpec& spec, long pair_samples,
                                std::uint64_t seed);
std::vector<AxiomReport> check_weight(const OscillatorSpec& spec, const WeightFn& M,
                                      long pair_samples, std::uint64_t seed);

// Pointwise comparison g1 <= C * g2 at sampled points (denominator ratios).
struct ComparisonWitness {
  bool holds = true;                  // g1 <= C g2 at every sampled point
  std::vector<double> witness;        // a point where it fails (if any)
};
ComparisonWitness compare_metrics(const SplitMetricFn& g1, const SplitMetricFn& g2, int n,
                                  double C, long samples, std::uint64_t seed);

}  // namespace anhosc
