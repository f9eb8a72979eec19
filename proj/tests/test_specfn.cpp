#include <doctest.h>

#include <cmath>
#include <random>

#include "anhosc/linalg.hpp"
#include "anhosc/quadrature.hpp"
#include "anhosc/specfn.hpp"

using namespace anhosc;

namespace {

Spectrum harmonic_spectrum(int N = 256) {
  return spectrum(OscillatorSpec::prototype(1, 1, 1), N);
}

OscillatorSpec quartic() {
  return OscillatorSpec::make(1, 2, 1, Polynomial::monomial(1, {4}, 1.0),
                              Polynomial::monomial(1, {2}, 1.0), 0.5, 0.5);
}

// direct-summation oracle for sum_j (2j+1)^{-s} with integral tail brackets
std::pair<double, double> harmonic_zeta_bracket(double s, long J = 10000000) {
  double sum = 0.0;
  for (long j = J - 1; j >= 0; --j) sum += std::pow(2.0 * j + 1.0, -s);
  // integral bounds: int_J <= tail <= int_{J-1}
  const double lo = std::pow(2.0 * J + 1.0, 1.0 - s) / (2.0 * (s - 1.0));
  const double hi = std::pow(2.0 * J - 1.0, 1.0 - s) / (2.0 * (s - 1.0));
  return {sum + lo, sum + hi};
}

}  // namespace

TEST_CASE("zeta of the harmonic oscillator hits the closed forms") {
  const double z2 = M_PI * M_PI / 8.0;                  // (1 - 2^-2) zeta_R(2)
  const double z4 = (15.0 / 16.0) * std::pow(M_PI, 4) / 90.0;  // (1 - 2^-4) zeta_R(4)
  // the closed forms themselves sit inside the summation oracle's bracket
  const auto [lo2, hi2] = harmonic_zeta_bracket(2.0);
  CHECK(lo2 - 1e-13 <= z2);
  CHECK(z2 <= hi2 + 1e-13);
  const auto [lo4, hi4] = harmonic_zeta_bracket(4.0, 100000);
  CHECK(lo4 - 1e-13 <= z4);
  CHECK(z4 <= hi4 + 1e-13);

  const Spectrum sp = harmonic_spectrum();
  const ZetaResult r2 = zeta(sp, 2.0);
  CHECK(r2.j_cut <= 200);
  CHECK(std::abs(r2.value - z2) < 1e-6);
  CHECK(std::abs(r2.value - z2) < 10 * r2.error_bar + 1e-12);
  CHECK(r2.tail_estimate > 0.0);
  CHECK(r2.value == doctest::Approx(r2.partial_sum + r2.tail_estimate));
  CHECK(r2.abscissa_estimate == doctest::Approx(1.0).epsilon(0.05));

  const ZetaResult r4 = zeta(sp, 4.0);
  CHECK(std::abs(r4.value - z4) < 1e-8);
}

TEST_CASE("zeta guards and the toy spectrum") {
  Spectrum toy;
  toy.method = "fixture";
  toy.eigenvalues = {2.0};
  toy.converged_count = 1;
  const ZetaResult r = zeta(toy, 1.0);
  CHECK(r.value == doctest::Approx(0.5));
  CHECK(r.tail_estimate == 0.0);

  const Spectrum sp = harmonic_spectrum();
  CHECK_THROWS_AS(zeta(sp, 1.05), std::runtime_error);  // at/below abscissa + 0.1

  Spectrum nonpos = sp;
  nonpos.eigenvalues[0] = -1.0;
  CHECK_THROWS_AS(zeta(nonpos, 2.0), std::runtime_error);
}

TEST_CASE("zeta tail consistency under j_cut doubling") {
  const Spectrum sp = harmonic_spectrum();
  const ZetaResult a = zeta(sp, 2.0, 100);
  const ZetaResult b = zeta(sp, 2.0, 200);
  CHECK(std::abs(a.value - b.value) <= a.error_bar + b.error_bar + 1e-12);
}

TEST_CASE("counting fits reproduce the phase-space exponents") {
  const CountingFit h = counting_fit(harmonic_spectrum());
  CHECK(h.volume_exponent == doctest::Approx(1.0));
  CHECK(h.exponent == doctest::Approx(1.0).epsilon(0.02));

  const CountingFit q = counting_fit(spectrum(quartic(), 400));
  CHECK(q.volume_exponent == doctest::Approx(0.75));
  CHECK(q.exponent == doctest::Approx(0.75).epsilon(0.0533));

  const CountingFit h2 = counting_fit(spectrum(OscillatorSpec::prototype(2, 1, 1), 80));
  CHECK(h2.volume_exponent == doctest::Approx(2.0));
  CHECK(h2.exponent == doctest::Approx(2.0).epsilon(0.05));

  Spectrum small = harmonic_spectrum();
  small.converged_count = 10;
  CHECK_THROWS_AS(counting_fit(small), std::runtime_error);
}

TEST_CASE("schatten verdicts around the quartic threshold") {
  const Spectrum sp = spectrum(quartic(), 400);
  // threshold (k+l) n/(2 k l r) = 3/4 at r = 1
  const SchattenReport conv = schatten_verdict(sp, 1.0, 1.0);
  CHECK(conv.threshold == doctest::Approx(0.75));
  CHECK(conv.verdict == "convergent");
  const SchattenReport div = schatten_verdict(sp, 0.5, 1.0);
  CHECK(div.verdict == "divergent");

  // harmonic at r=2: mu = 0.51 just above threshold 1/2
  const SchattenReport near = schatten_verdict(harmonic_spectrum(), 0.51, 2.0);
  CHECK(near.verdict == "convergent");
  CHECK(near.near_margin);
}

TEST_CASE("schatten verdicts agree with the weight-integrability chain") {
  // W^-mu' lies in S(lambda_g^{-mu' 2kl/(k+l)}, g); Schatten membership
  // needs mu' 2kl/(k+l) > n/r, matching the spectral verdict
  for (const OscillatorSpec& spec :
       {OscillatorSpec::prototype(1, 1, 1), quartic()}) {
    const Spectrum sp = spectrum(spec, 320);
    const double ratio = 2.0 * spec.k() * spec.l() / static_cast<double>(spec.k() + spec.l());
    for (double r : {1.0, 2.0}) {
      const double thr = (spec.k() + spec.l()) * spec.n() /
                         (2.0 * spec.k() * spec.l() * r);
      for (double off : {0.25, 0.4, -0.25, -0.4}) {
        const double mu_prime = thr + off;
        if (mu_prime <= 0.01) continue;
        const SchattenReport rep = schatten_verdict(sp, mu_prime, r);
        const WeightIntegrability w = weight_integrability(spec, mu_prime * ratio, r);
        CHECK(rep.verdict == (w.analytic ? "convergent" : "divergent"));
      }
    }
  }
}

TEST_CASE("singular value decay fits") {
  std::vector<double> fast(120);
  for (std::size_t j = 0; j < fast.size(); ++j) fast[j] = std::pow(2.0 * j + 1.0, -2.0);
  const SvDecayFit f = sv_decay_fit(fast, 1.0);
  CHECK(f.exponent == doctest::Approx(2.0).epsilon(0.02));
  CHECK(f.passes_small_o);

  // the exact boundary sequence s_j = j^{-1/r} is not small-o
  std::vector<double> boundary(120);
  for (std::size_t j = 0; j < boundary.size(); ++j)
    boundary[j] = std::pow(static_cast<double>(j + 1), -0.5);
  const SvDecayFit g = sv_decay_fit(boundary, 2.0);
  CHECK_FALSE(g.passes_small_o);

  std::vector<double> tiny(10, 1.0);
  CHECK_THROWS_AS(sv_decay_fit(tiny, 1.0), std::runtime_error);
}

TEST_CASE("schatten nesting on computed sequences") {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXcd A(40, 40);
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j) A(i, j) = std::complex<double>(nd(gen), nd(gen));
    const auto sv = singular_values_of(A);
    // l^q norm <= l^p norm for p < q
    CHECK(schatten_norm(sv, 2.0) <= schatten_norm(sv, 1.0) + 1e-10);
    CHECK(schatten_norm(sv, 4.0) <= schatten_norm(sv, 2.0) + 1e-10);
    CHECK(schatten_norm(sv, 1.0) <= schatten_norm(sv, 0.5) + 1e-10);
  }
}

TEST_CASE("schatten product inequality on random pairs") {
  std::mt19937_64 gen(23);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 20 + static_cast<int>(gen() % 41);
    Eigen::MatrixXcd A(m, m), B(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        A(i, j) = std::complex<double>(nd(gen), nd(gen));
        B(i, j) = std::complex<double>(nd(gen), nd(gen));
      }
    const double p = 1.0 + (rep % 3), q = 2.0 + (rep % 2);
    const double r = 1.0 / (1.0 / p + 1.0 / q);
    CHECK(schatten_norm(Eigen::MatrixXcd(A * B), r) <=
          schatten_norm(A, p) * schatten_norm(B, q) + 1e-10);
  }
}

TEST_CASE("weyl inequality on random non-normal fixtures") {
  std::mt19937_64 gen(29);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::MatrixXcd A(30, 30);
    for (int i = 0; i < 30; ++i)
      for (int j = 0; j < 30; ++j) A(i, j) = std::complex<double>(nd(gen), nd(gen));
    const auto sv = singular_values_of(A);
    const auto ev = complex_eigenvalues(A);
    for (double p : {0.5, 1.0, 2.0}) {
      double lam_sum = 0.0, sv_sum = 0.0;
      for (const auto& l : ev) lam_sum += std::pow(std::abs(l), p);
      for (double s : sv) sv_sum += std::pow(s, p);
      CHECK(lam_sum <= sv_sum + 1e-10 * std::max(1.0, sv_sum));
    }
  }
}
