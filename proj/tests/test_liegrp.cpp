#include <doctest.h>

#include <cmath>

#include "anhosc/groups.hpp"
#include "anhosc/positivity.hpp"

using namespace anhosc;

TEST_CASE("engel family realizes the sub-laplacian symbol") {
  const GroupSymbolFamily fam = engel_spec(1.0, 0.0);
  CHECK(fam.realized.k() == 2);
  CHECK(fam.realized.l() == 1);
  // symbol value at (1,1): xi^2 + (x^2)^2/4 = 1.25
  const std::vector<double> X{1.0, 1.0};
  const double val = fam.realized.weight_at(X) - 1.0;  // strip p0 + q0 = 1
  CHECK(val == doctest::Approx(1.25).epsilon(1e-14));

  // mu = 4: double wells at +-2 with p = 0 there and p(0) = 4
  const GroupSymbolFamily dw = engel_spec(1.0, 4.0);
  const double two = 2.0, zero = 0.0, mtwo = -2.0;
  CHECK(dw.realized.p().eval(std::span<const double>(&two, 1)) == doctest::Approx(0.0));
  CHECK(dw.realized.p().eval(std::span<const double>(&mtwo, 1)) == doctest::Approx(0.0));
  CHECK(dw.realized.p().eval(std::span<const double>(&zero, 1)) == doctest::Approx(4.0));

  CHECK_THROWS_AS(engel_spec(0.0, 1.0), ValidationError);
  CHECK(fam.schatten_threshold(1.0) == doctest::Approx(0.75));
  CHECK(fam.schatten_threshold(2.0) == doctest::Approx(0.375));
}

TEST_CASE("engel realized potentials stay in P_4 across parameters") {
  for (double lam : {0.5, 1.0, 2.0})
    for (double mu : {0.0, 1.0, 4.0}) {
      const GroupSymbolFamily fam = engel_spec(lam, mu);
      const P2kDecision d = is_in_P2k(fam.realized.p(), 2);
      CHECK(d.member);
      CHECK(d.min_on_sphere == doctest::Approx(lam * lam / 4.0));
      // both symbol terms are nonnegative, so the ground state is too
      const Spectrum sp = spectrum(fam.realized, 128);
      CHECK(sp.eigenvalues.front() >= 0.0);
    }
}

TEST_CASE("cartan family and its coincidences") {
  const GroupSymbolFamily fam = cartan_spec(1.0, 0.0);
  const std::vector<double> X{1.0, 1.0};
  CHECK(fam.realized.weight_at(X) - 1.0 == doctest::Approx(1.25).epsilon(1e-14));
  CHECK_THROWS_AS(cartan_spec(-1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(cartan_spec(0.0, 0.0), ValidationError);

  // nu = 0, kappa = 1 is the pure quartic prototype with p = x^4/4
  Polynomial p(1);
  p.add_term({4}, 0.25);
  const OscillatorSpec direct = OscillatorSpec::make(
      1, 2, 1, p, Polynomial::monomial(1, {2}, 1.0), 0.5, 0.5);
  const Spectrum a = spectrum(fam.realized, 256);
  const Spectrum b = spectrum(direct, 256);
  REQUIRE(a.converged_count >= 30);
  for (int j = 0; j < 30; ++j)
    CHECK(a.eigenvalues[static_cast<std::size_t>(j)] ==
          doctest::Approx(b.eigenvalues[static_cast<std::size_t>(j)]).epsilon(1e-9));
}

TEST_CASE("cartan kappa scaling matches the quartic scaling law") {
  // q(D) + p(x) = kappa^-1 D^2 + kappa^3 x^4/4 rescales to
  // (kappa/4)^{... }: eigenvalues scale as kappa^(1/3) from kappa = 1
  const Spectrum s1 = spectrum(cartan_spec(1.0, 0.0).realized, 320);
  const Spectrum s2 = spectrum(cartan_spec(2.0, 0.0).realized, 320);
  const double factor = std::pow(2.0, 1.0 / 3.0);
  REQUIRE(s1.converged_count >= 20);
  REQUIRE(s2.converged_count >= 20);
  for (int j = 0; j < 20; ++j)
    CHECK(s2.eigenvalues[static_cast<std::size_t>(j)] ==
          doctest::Approx(factor * s1.eigenvalues[static_cast<std::size_t>(j)])
              .epsilon(1e-9));
}

TEST_CASE("heisenberg family reduces to scaled harmonic oscillators") {
  const GroupSymbolFamily h1 = heisenberg_spec(1.0, 1, 1, 1);
  const Spectrum sp1 = spectrum(h1.realized, 128);
  for (int j = 0; j < 20; ++j)
    CHECK(sp1.eigenvalues[static_cast<std::size_t>(j)] ==
          doctest::Approx(2.0 * j + 1.0).epsilon(1e-12));

  const GroupSymbolFamily h4 = heisenberg_spec(4.0, 1, 1, 1);
  const Spectrum sp4 = spectrum(h4.realized, 128);
  for (int j = 0; j < 20; ++j)
    CHECK(sp4.eigenvalues[static_cast<std::size_t>(j)] ==
          doctest::Approx(4.0 * (2.0 * j + 1.0)).epsilon(1e-12));

  CHECK(h4.seminorm_normalizer == doctest::Approx(4.0));
  CHECK_THROWS_AS(heisenberg_spec(-1.0, 1, 1, 1), ValidationError);

  // role swap: x-degree 2l, xi-degree 2k
  const GroupSymbolFamily h21 = heisenberg_spec(1.0, 2, 1, 1);
  CHECK(h21.realized.p().degree() == 2);
  CHECK(h21.realized.q().degree() == 4);
  CHECK(h21.schatten_threshold(1.0) == doctest::Approx(0.75));
}

TEST_CASE("sweep output is independent of the worker count") {
  std::vector<std::map<std::string, double>> grid;
  for (double mu : {0.0, 1.0, 2.0, 4.0}) grid.push_back({{"lambda", 1.0}, {"mu", mu}});
  SweepOptions serial;
  serial.N = 96;
  serial.threads = 1;
  SweepOptions pooled = serial;
  pooled.threads = 4;
  const Json a = sweep("engel", grid, kStageSpectrum | kStageSchatten, serial).to_json();
  const Json b = sweep("engel", grid, kStageSpectrum | kStageSchatten, pooled).to_json();
  CHECK(a.dump() == b.dump());
}

TEST_CASE("counting exponent 3/4 across engel and cartan parameters") {
  std::vector<GroupSymbolFamily> fams;
  for (double mu : {0.0, 2.0}) fams.push_back(engel_spec(1.0, mu));
  for (double nu : {0.0, 1.0}) fams.push_back(cartan_spec(1.0, nu));
  for (const auto& fam : fams) {
    const CountingFit fit = counting_fit(spectrum(fam.realized, 400));
    CHECK(fit.volume_exponent == doctest::Approx(0.75));
    CHECK(fit.exponent == doctest::Approx(0.75).epsilon(0.05));
  }
}

TEST_CASE("sweeps isolate failures and record cross-parameter tables") {
  const SweepBundle empty = sweep("engel", {}, kStageSpectrum);
  CHECK(empty.points.empty());

  SweepOptions opts;
  opts.N = 160;
  std::vector<std::map<std::string, double>> grid;
  for (double mu : {0.0, 1.0, 2.0, 4.0}) grid.push_back({{"lambda", 1.0}, {"mu", mu}});
  grid.push_back({{"lambda", 0.0}, {"mu", 0.0}});  // invalid point
  const SweepBundle bundle = sweep("engel", grid, kStageSpectrum | kStageSchatten, opts);
  REQUIRE(bundle.points.size() == 5);
  for (int i = 0; i < 4; ++i) {
    CHECK(bundle.points[static_cast<std::size_t>(i)].ok);
    CHECK(bundle.points[static_cast<std::size_t>(i)].report.contains("schatten"));
  }
  CHECK_FALSE(bundle.points[4].ok);
  CHECK_FALSE(bundle.points[4].error.empty());

  // ground-state energies come out as data, one row per point
  const auto tmp = std::filesystem::temp_directory_path() / "anhosc_sweep_test";
  std::filesystem::remove_all(tmp);
  bundle.write(tmp);
  CHECK(std::filesystem::exists(tmp / "manifest.json"));
  CHECK(std::filesystem::exists(tmp / "ground_state.csv"));
  CHECK(std::filesystem::exists(tmp / "points/4/report.json"));
  std::filesystem::remove_all(tmp);
}
