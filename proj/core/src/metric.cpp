#include "anhosc/metric.hpp"

#include <cmath>
#include <sstream>

#include "anhosc/report.hpp"
#include "anhosc/sampling.hpp"

namespace anhosc {

double MetricAt::quad(std::span<const double> T, int n) const {
  double sx = 0.0, sxi = 0.0;
  for (int i = 0; i < n; ++i) sx += T[i] * T[i];
  for (int i = 0; i < n; ++i) sxi += T[n + i] * T[n + i];
  return sx / a + sxi / b;
}

double MetricAt::quad_sigma(std::span<const double> T, int n) const {
  double sx = 0.0, sxi = 0.0;
  for (int i = 0; i < n; ++i) sx += T[i] * T[i];
  for (int i = 0; i < n; ++i) sxi += T[n + i] * T[n + i];
  return b * sx + a * sxi;
}

MetricAt metric_at(const OscillatorSpec& spec, std::span<const double> X) {
  const double W = spec.weight_at(X);
  MetricAt m;
  m.a = std::pow(W, 1.0 / spec.k());
  m.b = std::pow(W, 1.0 / spec.l());
  return m;
}

SplitMetricFn metric_of(const OscillatorSpec& spec) {
  return [spec](std::span<const double> X) { return metric_at(spec, X); };
}

SplitMetricFn corrupted_metric(const OscillatorSpec& spec, double x_exponent) {
  return [spec, x_exponent](std::span<const double> X) {
    const double W = spec.weight_at(X);
    MetricAt m;
    m.a = std::pow(W, x_exponent);
    m.b = std::pow(W, 1.0 / spec.l());
    return m;
  };
}

SplitMetricFn g10_metric() {
  return [](std::span<const double> X) {
    const int n = static_cast<int>(X.size()) / 2;
    double xi2 = 0.0;
    for (int i = 0; i < n; ++i) xi2 += X[n + i] * X[n + i];
    MetricAt m;
    m.a = 1.0;
    m.b = 1.0 + xi2;
    return m;
  };
}

std::vector<double> default_C_lattice() { return {1, 10, 100, 1e3, 1e4, 1e5, 1e6}; }
std::vector<int> default_N_lattice() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

std::string AxiomReport::to_json() const {
  Json j;
  j["axiom"] = axiom;
  j["pass"] = pass;
  if (C > 0.0) j["C"] = C;
  if (N >= 0) j["N"] = N;
  j["samples"] = samples;
  j["seed"] = seed;
  Json arr = Json::array();
  for (const auto& v : violations) {
    Json jv;
    jv["X"] = json_vector(v.X);
    if (!v.Y.empty()) jv["Y"] = json_vector(v.Y);
    jv["lhs"] = v.lhs;
    jv["rhs"] = v.rhs;
    arr.push_back(std::move(jv));
  }
  j["violations"] = std::move(arr);
  j["note"] = note;
  return j.dump(2);
}

namespace {

struct PairSample {
  std::vector<double> X;
  std::vector<double> Y;  // displacement
};

// Displacements drawn both in the g_X unit ball (slowness is binding near
// the diagonal) and at euclidean scales comparable to |X| (temperateness is
// binding far away).
std::vector<PairSample> draw_pairs(const SplitMetricFn& g, int n, long count, Rng& rng) {
  std::vector<PairSample> out;
  out.reserve(static_cast<std::size_t>(count));
  const int d = 2 * n;
  for (long s = 0; s < count; ++s) {
    PairSample ps;
    ps.X = sample_phase_point(d, rng);
    const MetricAt m = g(ps.X);
    std::vector<double> u = random_direction(d, rng);
    if (s % 2 == 0) {
      // g_X-ball: scale so that g_X(Y) = t^2, t uniform in (0, 1]
      const double t = rng.uniform(1e-6, 1.0);
      ps.Y.resize(d);
      for (int i = 0; i < n; ++i) ps.Y[i] = u[i] * t * std::sqrt(m.a);
      for (int i = 0; i < n; ++i) ps.Y[n + i] = u[n + i] * t * std::sqrt(m.b);
    } else {
      double norm = 0.0;
      for (double v : ps.X) norm += v * v;
      const double scale = rng.uniform(0.0, 2.0) * std::sqrt(norm) + rng.uniform(0.0, 1.0);
      ps.Y.resize(d);
      for (int i = 0; i < d; ++i) ps.Y[i] = u[i] * scale;
    }
    out.push_back(std::move(ps));
  }
  // the exact-identity edge case Y = 0
  PairSample zero;
  zero.X = sample_phase_point(d, rng);
  zero.Y.assign(d, 0.0);
  out.push_back(std::move(zero));
  return out;
}

std::vector<double> shifted(const std::vector<double>& X, const std::vector<double>& Y) {
  std::vector<double> Z(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) Z[i] = X[i] + Y[i];
  return Z;
}

}  // namespace

AxiomReport check_slowness(const SplitMetricFn& g, int n, long pair_samples,
                           std::span<const double> C_lattice, std::uint64_t seed) {
  AxiomReport rep;
  rep.axiom = "slowness";
  rep.seed = seed;
  Rng rng(seed);
  const auto pairs = draw_pairs(g, n, pair_samples, rng);
  rep.samples = static_cast<long>(pairs.size());

  // g_X(Y) <= 1/C  =>  g_{X+Y} <= C g_X, i.e. a(X+Y) >= a(X)/C and same for b
  for (double C : C_lattice) {
    bool ok = true;
    for (const auto& ps : pairs) {
      const MetricAt mX = g(ps.X);
      if (mX.quad(ps.Y, n) > 1.0 / C) continue;
      const MetricAt mXY = g(shifted(ps.X, ps.Y));
      if (mXY.a < mX.a / C || mXY.b < mX.b / C) {
        ok = false;
        break;
      }
    }
    if (ok) {
      rep.pass = true;
      rep.C = C;
      return rep;
    }
  }
  rep.pass = false;
  const double Cmax = C_lattice.back();
  for (const auto& ps : pairs) {
    const MetricAt mX = g(ps.X);
    if (mX.quad(ps.Y, n) > 1.0 / Cmax) continue;
    const MetricAt mXY = g(shifted(ps.X, ps.Y));
    if (mXY.a < mX.a / Cmax || mXY.b < mX.b / Cmax) {
      AxiomViolation v;
      v.X = ps.X;
      v.Y = ps.Y;
      v.lhs = std::max(mX.a / mXY.a, mX.b / mXY.b);
      v.rhs = Cmax;
      rep.violations.push_back(std::move(v));
      if (rep.violations.size() >= 8) break;
    }
  }
  return rep;
}

AxiomReport check_uncertainty(const SplitMetricFn& g, int n, long samples,
                              std::uint64_t seed) {
  AxiomReport rep;
  rep.axiom = "uncertainty";
  rep.seed = seed;
  rep.samples = samples;
  Rng rng(seed);
  rep.pass = true;
  for (long s = 0; s < samples; ++s) {
    std::vector<double> X =
        (s == 0) ? std::vector<double>(2 * n, 0.0) : sample_phase_point(2 * n, rng);
    const double lam = g(X).lambda();
    if (lam < 1.0 - 1e-12) {
      rep.pass = false;
      AxiomViolation v;
      v.X = std::move(X);
      v.lhs = lam;
      v.rhs = 1.0;
      rep.violations.push_back(std::move(v));
      if (rep.violations.size() >= 8) return rep;
    }
  }
  return rep;
}

namespace {

AxiomReport check_ratio_temperate(const std::string& axiom, const SplitMetricFn& g,
                                  const std::function<double(std::span<const double>,
                                                             std::span<const double>)>& ratio,
                                  int n, long pair_samples,
                                  std::span<const double> C_lattice,
                                  std::span<const int> N_lattice, std::uint64_t seed) {
  AxiomReport rep;
  rep.axiom = axiom;
  rep.seed = seed;
  Rng rng(seed);
  const auto pairs = draw_pairs(g, n, pair_samples, rng);
  rep.samples = static_cast<long>(pairs.size());

  struct Eval {
    double r;      // max of the +/- ratios
    double base;   // 1 + g^sigma_Y(X - Y)
  };
  std::vector<Eval> evals;
  evals.reserve(pairs.size());
  for (const auto& ps : pairs) {
    const std::vector<double> Ypt = shifted(ps.X, ps.Y);
    const MetricAt mY = g(Ypt);
    Eval e;
    e.r = ratio(ps.X, Ypt);
    e.base = 1.0 + mY.quad_sigma(ps.Y, n);
    evals.push_back(e);
  }
  for (int N : N_lattice) {
    for (double C : C_lattice) {
      bool ok = true;
      for (const auto& e : evals)
        if (e.r > C * std::pow(e.base, N)) {
          ok = false;
          break;
        }
      if (ok) {
        rep.pass = true;
        rep.C = C;
        rep.N = N;
        return rep;
      }
    }
  }
  rep.pass = false;
  const double Cmax = C_lattice.back();
  const int Nmax = N_lattice.back();
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (evals[i].r > Cmax * std::pow(evals[i].base, Nmax)) {
      AxiomViolation v;
      v.X = pairs[i].X;
      v.Y = pairs[i].Y;
      v.lhs = evals[i].r;
      v.rhs = Cmax * std::pow(evals[i].base, Nmax);
      rep.violations.push_back(std::move(v));
      if (rep.violations.size() >= 8) break;
    }
  }
  return rep;
}

}  // namespace

AxiomReport check_temperateness(const SplitMetricFn& g, int n, long pair_samples,
                                std::span<const double> C_lattice,
                                std::span<const int> N_lattice, std::uint64_t seed) {
  auto ratio = [&g](std::span<const double> X, std::span<const double> Y) {
    const MetricAt mX = g(X), mY = g(Y);
    return std::max(std::max(mX.a / mY.a, mY.a / mX.a),
                    std::max(mX.b / mY.b, mY.b / mX.b));
  };
  return check_ratio_temperate("temperateness", g, ratio, n, pair_samples, C_lattice,
                               N_lattice, seed);
}

AxiomReport check_weight_continuity(const SplitMetricFn& g, const WeightFn& M, int n,
                                    long pair_samples, std::span<const double> C_lattice,
                                    std::uint64_t seed) {
  AxiomReport rep;
  rep.axiom = "weight-continuity";
  rep.seed = seed;
  Rng rng(seed);
  const auto pairs = draw_pairs(g, n, pair_samples, rng);
  rep.samples = static_cast<long>(pairs.size());

  // g_X(X - Y) <= 1/C  =>  (M(X)/M(Y))^{+-1} <= C
  for (double C : C_lattice) {
    bool ok = true;
    for (const auto& ps : pairs) {
      const MetricAt mX = g(ps.X);
      if (mX.quad(ps.Y, n) > 1.0 / C) continue;
      const std::vector<double> Ypt = shifted(ps.X, ps.Y);
      const double r = M(ps.X) / M(Ypt);
      if (std::max(r, 1.0 / r) > C) {
        ok = false;
        break;
      }
    }
    if (ok) {
      rep.pass = true;
      rep.C = C;
      return rep;
    }
  }
  rep.pass = false;
  const double Cmax = C_lattice.back();
  for (const auto& ps : pairs) {
    const MetricAt mX = g(ps.X);
    if (mX.quad(ps.Y, n) > 1.0 / Cmax) continue;
    const std::vector<double> Ypt = shifted(ps.X, ps.Y);
    const double r = M(ps.X) / M(Ypt);
    if (std::max(r, 1.0 / r) > Cmax) {
      AxiomViolation v;
      v.X = ps.X;
      v.Y = ps.Y;
      v.lhs = std::max(r, 1.0 / r);
      v.rhs = Cmax;
      rep.violations.push_back(std::move(v));
      if (rep.violations.size() >= 8) break;
    }
  }
  return rep;
}

AxiomReport check_weight_temperateness(const SplitMetricFn& g, const WeightFn& M, int n,
                                       long pair_samples, std::span<const double> C_lattice,
                                       std::span<const int> N_lattice, std::uint64_t seed) {
  auto ratio = [&M](std::span<const double> X, std::span<const double> Y) {
    const double r = M(X) / M(Y);
    return std::max(r, 1.0 / r);
  };
  AxiomReport rep = check_ratio_temperate("weight-temperateness", g, ratio, n, pair_samples,
                                          C_lattice, N_lattice, seed);
  return rep;
}

AxiomReport check_slowness(const OscillatorSpec& spec, long pair_samples, std::uint64_t seed) {
  const auto C = default_C_lattice();
  return check_slowness(metric_of(spec), spec.n(), pair_samples, C, seed);
}

AxiomReport check_uncertainty(const OscillatorSpec& spec, long samples, std::uint64_t seed) {
  // exact split-metric formula: lambda_g = W^((k+l)/(2kl))
  AxiomReport rep;
  rep.axiom = "uncertainty";
  rep.seed = seed;
  rep.samples = samples;
  Rng rng(seed);
  rep.pass = true;
  const double e = spec.lambda_exponent();
  for (long s = 0; s < samples; ++s) {
    std::vector<double> X = (s == 0) ? std::vector<double>(2 * spec.n(), 0.0)
                                     : sample_phase_point(2 * spec.n(), rng);
    const double lam = std::pow(spec.weight_at(X), e);
    if (lam < 1.0 - 1e-12) {
      rep.pass = false;
      AxiomViolation v;
      v.X = std::move(X);
      v.lhs = lam;
      v.rhs = 1.0;
      rep.violations.push_back(std::move(v));
      if (rep.violations.size() >= 8) return rep;
    }
  }
  return rep;
}

AxiomReport check_temperateness(const OscillatorSpec& spec, long pair_samples,
                                std::uint64_t seed) {
  const auto C = default_C_lattice();
  const auto N = default_N_lattice();
  return check_temperateness(metric_of(spec), spec.n(), pair_samples, C, N, seed);
}

std::vector<AxiomReport> check_weight(const OscillatorSpec& spec, const WeightFn& M,
                                      long pair_samples, std::uint64_t seed) {
  const auto C = default_C_lattice();
  // weights like W^s need N growing with s, so the weight lattice extends
  // past the metric one (which stays at 1..8)
  std::vector<int> N;
  for (int v = 0; v <= 32; ++v) N.push_back(v);
  std::vector<AxiomReport> out;
  out.push_back(
      check_weight_continuity(metric_of(spec), M, spec.n(), pair_samples, C, seed));
  out.push_back(check_weight_temperateness(metric_of(spec), M, spec.n(), pair_samples, C, N,
                                           seed + 1));
  return out;
}

ComparisonWitness compare_metrics(const SplitMetricFn& g1, const SplitMetricFn& g2, int n,
                                  double C, long samples, std::uint64_t seed) {
  // g1 <= C g2 pointwise for diagonal split metrics means the g1
  // denominators dominate: a1 >= a2/C and b1 >= b2/C.
  ComparisonWitness out;
  Rng rng(seed);
  for (long s = 0; s < samples; ++s) {
    std::vector<double> X =
        (s == 0) ? std::vector<double>(2 * n, 0.0) : sample_phase_point(2 * n, rng);
    const MetricAt m1 = g1(X), m2 = g2(X);
    if (m1.a < m2.a / C - 1e-15 || m1.b < m2.b / C - 1e-15) {
      out.holds = false;
      out.witness = std::move(X);
      return out;
    }
  }
  return out;
}

}  // namespace anhosc
