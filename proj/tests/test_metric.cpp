#include <doctest.h>

#include <cmath>

#include "anhosc/metric.hpp"

using namespace anhosc;

namespace {

OscillatorSpec quartic_spec() {
  // p = x^4, q = xi^2, p0 = q0 = 1/2: the (k,l) = (2,1) prototype
  return OscillatorSpec::prototype(1, 2, 1);
}

}  // namespace

TEST_CASE("metric denominators and lambda_g") {
  const OscillatorSpec h = OscillatorSpec::prototype(1, 1, 1);
  const std::vector<double> origin{0.0, 0.0};
  const MetricAt m0 = metric_at(h, origin);
  CHECK(m0.a == doctest::Approx(1.0));
  CHECK(m0.b == doctest::Approx(1.0));
  CHECK(m0.lambda() == doctest::Approx(1.0));
  CHECK(m0.planck() * m0.lambda() == doctest::Approx(1.0));

  // W = 16 at x = 15^(1/4) for the quartic: a = W^(1/2) = 4, b = W = 16
  const OscillatorSpec q = quartic_spec();
  const std::vector<double> X{std::pow(15.0, 0.25), 0.0};
  const MetricAt mq = metric_at(q, X);
  CHECK(mq.a == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(mq.b == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(mq.lambda() == doctest::Approx(8.0).epsilon(1e-12));

  const std::vector<double> T{1.0, 0.0};
  CHECK(mq.quad(T, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(mq.quad_sigma(T, 1) == doctest::Approx(16.0).epsilon(1e-12));

  // lambda_g at (1,1) for the quartic: W = 3, lambda = 3^(3/4)
  const std::vector<double> Y{1.0, 1.0};
  CHECK(metric_at(q, Y).lambda() == doctest::Approx(std::pow(3.0, 0.75)).epsilon(1e-12));
}

TEST_CASE("split-metric lambda formula consistency") {
  const OscillatorSpec q = quartic_spec();
  const auto g = metric_of(q);
  const double e = q.lambda_exponent();
  for (double xv : {0.0, 0.5, 2.0, -3.0})
    for (double xiv : {0.0, 1.0, -2.5}) {
      const std::vector<double> X{xv, xiv};
      const double lam_split = g(X).lambda();
      const double lam_formula = std::pow(q.weight_at(X), e);
      CHECK(lam_split == doctest::Approx(lam_formula).epsilon(1e-12));
      CHECK(g(X).planck() <= 1.0 + 1e-12);
    }
}

TEST_CASE("slowness holds for oscillator metrics and fails for the corrupted fixture") {
  const auto C = default_C_lattice();
  for (auto [k, l] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 2}}) {
    const OscillatorSpec spec = OscillatorSpec::prototype(1, k, l);
    const AxiomReport rep = check_slowness(spec, 10000, 2024);
    CHECK(rep.pass);
    CHECK(rep.C >= 1.0);
    CHECK(rep.violations.empty());
  }
  // x-exponent 1/k replaced by 2: big jumps stay inside the unit g-ball
  const OscillatorSpec spec = quartic_spec();
  const AxiomReport bad =
      check_slowness(corrupted_metric(spec, 2.0), 1, 10000, C, 2024);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.violations.empty());
}

TEST_CASE("uncertainty principle: boundary and violation fixtures") {
  const OscillatorSpec h = OscillatorSpec::prototype(1, 1, 1);  // p0 + q0 = 1
  const AxiomReport rep = check_uncertainty(h, 5000, 31);
  CHECK(rep.pass);

  // invalid shifts: W(0) = 0.2 < 1
  const OscillatorSpec bad = OscillatorSpec::make_unchecked(
      1, 1, 1, h.p(), h.q(), 0.1, 0.1);
  const AxiomReport repb = check_uncertainty(bad, 5000, 31);
  CHECK_FALSE(repb.pass);
  REQUIRE_FALSE(repb.violations.empty());
  // the violation witness is the origin (first sample probed)
  CHECK(repb.violations.front().lhs == doctest::Approx(std::pow(0.2, 1.0)));
}

TEST_CASE("temperateness holds with lattice constants") {
  for (auto [k, l] : {std::pair{1, 1}, std::pair{2, 1}}) {
    const OscillatorSpec spec = OscillatorSpec::prototype(1, k, l);
    const AxiomReport rep = check_temperateness(spec, 10000, 77);
    CHECK(rep.pass);
    CHECK(rep.N <= 8);
    CHECK(rep.C <= 1e6);
  }
}

TEST_CASE("the weight W and its powers pass the g-weight checks") {
  const OscillatorSpec spec = quartic_spec();
  const Polynomial W = spec.weight_poly();
  WeightFn M = [&W](std::span<const double> X) { return W.eval(X); };
  for (const auto& rep : check_weight(spec, M, 8000, 5)) CHECK(rep.pass);

  // constant weight: continuity at C = 1, temperateness at N = 0
  WeightFn one = [](std::span<const double>) { return 1.0; };
  const auto reps = check_weight(spec, one, 4000, 6);
  CHECK(reps[0].pass);
  CHECK(reps[0].C == doctest::Approx(1.0));
  CHECK(reps[1].pass);
  CHECK(reps[1].N == 0);

  // W^10: powers of weights are weights
  WeightFn w10 = [&W](std::span<const double> X) { return std::pow(W.eval(X), 10.0); };
  for (const auto& rep : check_weight(spec, w10, 8000, 9)) CHECK(rep.pass);
}

TEST_CASE("metric comparison against g^{1,0} and non-comparability") {
  // g^(k,1-) <= g^{1,0} with C = 1 at sampled points
  for (int k : {1, 2, 3}) {
    const OscillatorSpec spec = OscillatorSpec::prototype(1, k, 1);
    const ComparisonWitness w =
        compare_metrics(metric_of(spec), g10_metric(), 1, 1.0, 20000, 123);
    CHECK(w.holds);
  }
  // for l >= 2 the pointwise C = 1 comparison fails at small |xi|
  {
    const OscillatorSpec spec = OscillatorSpec::prototype(1, 3, 2);
    const ComparisonWitness w =
        compare_metrics(metric_of(spec), g10_metric(), 1, 1.0, 20000, 123);
    CHECK_FALSE(w.holds);
  }
  // (1,1) vs (2,1): witnesses in both directions
  const OscillatorSpec a = OscillatorSpec::prototype(1, 1, 1);
  const OscillatorSpec b = quartic_spec();
  const ComparisonWitness ab = compare_metrics(metric_of(a), metric_of(b), 1, 1.0, 20000, 9);
  const ComparisonWitness ba = compare_metrics(metric_of(b), metric_of(a), 1, 1.0, 20000, 9);
  CHECK_FALSE(ab.holds);
  CHECK_FALSE(ba.holds);
}

TEST_CASE("axiom reports serialize with replayable seeds") {
  const OscillatorSpec spec = quartic_spec();
  const AxiomReport rep = check_slowness(spec, 500, 42);
  const std::string j = rep.to_json();
  CHECK(j.find("\"axiom\": \"slowness\"") != std::string::npos);
  CHECK(j.find("\"seed\": 42") != std::string::npos);
  CHECK(j.find("falsification") != std::string::npos);
  // identical seeds reproduce identical reports
  const AxiomReport rep2 = check_slowness(spec, 500, 42);
  CHECK(rep2.to_json() == j);
}
