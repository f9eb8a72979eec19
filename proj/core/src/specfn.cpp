#include "anhosc/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anhosc/report.hpp"

namespace anhosc {

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = m * sxx - sx * sx;
  if (m < 2 || std::abs(denom) < 1e-12) throw std::runtime_error("degenerate linear fit");
  LineFit f;
  f.slope = (m * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / m;
  return f;
}

}  // namespace

GrowthFit fit_growth(const Spectrum& s) {
  const int conv = s.converged_count;
  if (conv < 8) throw std::runtime_error("fit_growth: too few converged eigenvalues");
  GrowthFit out;
  out.j_lo = conv / 2;
  out.j_hi = conv;

  std::vector<double> lx, ly;
  for (int j = out.j_lo; j < out.j_hi; ++j) {
    if (s.eigenvalues[static_cast<std::size_t>(j)] <= 0.0)
      throw std::runtime_error("fit_growth: non-positive eigenvalue in fit window");
    lx.push_back(std::log(static_cast<double>(j + 1)));
    ly.push_back(std::log(s.eigenvalues[static_cast<std::size_t>(j)]));
  }
  const LineFit f = least_squares(lx, ly);
  out.rho_empirical = f.slope;

  const double rho_theory = s.spec ? s.spec->growth_exponent() : f.slope;
  if (s.spec && std::abs(f.slope - rho_theory) <= 0.05 * rho_theory) {
    out.rho = rho_theory;
    out.snapped = true;
  } else {
    out.rho = f.slope;
    out.snapped = false;
  }

  // lambda^(1/rho) = A j + B  =>  c = A^rho, delta = B/A
  std::vector<double> jv, yv;
  for (int j = out.j_lo; j < out.j_hi; ++j) {
    jv.push_back(static_cast<double>(j));
    yv.push_back(std::pow(s.eigenvalues[static_cast<std::size_t>(j)], 1.0 / out.rho));
  }
  const LineFit lin = least_squares(jv, yv);
  if (lin.slope <= 0.0) throw std::runtime_error("fit_growth: non-increasing spectrum");
  out.c = std::pow(lin.slope, out.rho);
  out.delta = lin.intercept / lin.slope;
  if (out.delta <= -0.5 * out.j_lo)
    throw std::runtime_error("fit_growth: unstable tail model (index offset too negative)");

  double resid = 0.0;
  for (int j = out.j_lo; j < out.j_hi; ++j) {
    const double model = out.c * std::pow(j + out.delta, out.rho);
    resid = std::max(resid,
                     std::abs(model - s.eigenvalues[static_cast<std::size_t>(j)]) /
                         s.eigenvalues[static_cast<std::size_t>(j)]);
  }
  out.resid_rel = resid;
  return out;
}

ZetaResult zeta(const Spectrum& sp, double s, int j_cut_max) {
  ZetaResult out;
  out.s = s;
  const int j_cut = std::min(sp.converged_count, j_cut_max);
  if (j_cut < 1) throw std::runtime_error("zeta: no converged eigenvalues");
  for (int j = 0; j < j_cut; ++j)
    if (sp.eigenvalues[static_cast<std::size_t>(j)] <= 0.0)
      throw std::runtime_error("zeta: spectrum not strictly positive");
  out.j_cut = j_cut;

  if (j_cut < 8) {
    // toy spectra: bare partial sum, no tail model
    double partial = 0.0;
    for (int j = 0; j < j_cut; ++j)
      partial += std::pow(sp.eigenvalues[static_cast<std::size_t>(j)], -s);
    out.partial_sum = partial;
    out.value = partial;
    out.error_bar = std::pow(sp.eigenvalues[static_cast<std::size_t>(j_cut - 1)], -s);
    return out;
  }

  Spectrum head = sp;
  head.converged_count = j_cut;
  const GrowthFit fit = fit_growth(head);
  out.abscissa_estimate = 1.0 / fit.rho;
  if (s <= out.abscissa_estimate + 0.1)
    throw std::runtime_error("zeta: s at or below the estimated abscissa");

  double partial = 0.0;
  for (int j = 0; j < j_cut; ++j)
    partial += std::pow(sp.eigenvalues[static_cast<std::size_t>(j)], -s);
  out.partial_sum = partial;

  // tail: midpoint-corrected integral of the fitted model from j_cut
  const double rs = fit.rho * s;
  const double edge = static_cast<double>(j_cut) - 0.5 + fit.delta;
  out.tail_estimate = std::pow(fit.c, -s) * std::pow(edge, 1.0 - rs) / (rs - 1.0);
  out.value = out.partial_sum + out.tail_estimate;

  // error bar: model residual propagated through the tail plus the
  // midpoint-rule remainder (second difference scale)
  const double model_err = s * fit.resid_rel * out.tail_estimate;
  const double f_jcut = std::pow(fit.c * std::pow(j_cut + fit.delta, fit.rho), -s);
  const double em_err = rs * f_jcut / (12.0 * (j_cut + fit.delta));
  out.error_bar = model_err + em_err + 1e-15 * std::abs(out.value);
  return out;
}

std::string ZetaResult::to_json() const {
  Json j;
  j["s"] = s;
  j["partial_sum"] = partial_sum;
  j["tail_estimate"] = tail_estimate;
  j["value"] = value;
  j["abscissa_estimate"] = abscissa_estimate;
  j["error_bar"] = error_bar;
  j["j_cut"] = j_cut;
  return j.dump(2);
}

CountingFit counting_fit(const Spectrum& sp) {
  const int conv = sp.converged_count;
  if (conv < 30) throw std::runtime_error("counting_fit: need >= 30 converged eigenvalues");
  CountingFit out;
  if (sp.spec)
    out.volume_exponent =
        sp.spec->n() * (0.5 / sp.spec->k() + 0.5 / sp.spec->l());

  std::vector<double> lx, ly;
  for (int j = conv / 2; j < conv; ++j) {
    const double lam = sp.eigenvalues[static_cast<std::size_t>(j)];
    if (lam <= 0.0) throw std::runtime_error("counting_fit: non-positive eigenvalue");
    out.lambda.push_back(lam);
    out.counts.push_back(j + 1);
    lx.push_back(std::log(lam));
    ly.push_back(std::log(static_cast<double>(j + 1)));
  }
  const LineFit f = least_squares(lx, ly);
  out.exponent = f.slope;
  out.constant = std::exp(f.intercept);
  return out;
}

std::string CountingFit::to_json() const {
  Json j;
  j["exponent"] = exponent;
  j["constant"] = constant;
  j["volume_exponent"] = volume_exponent;
  j["points"] = counts.size();
  return j.dump(2);
}

SchattenReport schatten_verdict(const Spectrum& sp, double mu, double r, double shift,
                                double margin) {
  SchattenReport rep;
  if (sp.spec) {
    rep.k = sp.spec->k();
    rep.l = sp.spec->l();
    rep.n = sp.spec->n();
    if (shift < 0.0) shift = sp.spec->p0() + sp.spec->q0();
  } else if (shift < 0.0) {
    shift = 0.0;
  }
  rep.r = r;
  rep.mu = mu;
  rep.margin = margin;
  rep.threshold =
      static_cast<double>(rep.k + rep.l) * rep.n / (2.0 * rep.k * rep.l * r);

  const GrowthFit fit = fit_growth(sp);
  rep.threshold_estimate = 1.0 / (r * fit.rho);

  // per-term decay exponent of (lambda_j + shift)^(-mu r)
  std::vector<double> lx, ly;
  for (int j = sp.converged_count / 2; j < sp.converged_count; ++j) {
    const double t = std::pow(sp.eigenvalues[static_cast<std::size_t>(j)] + shift, -mu * r);
    lx.push_back(std::log(static_cast<double>(j + 1)));
    ly.push_back(std::log(t));
  }
  rep.fit_exponent = -least_squares(lx, ly).slope;
  rep.near_margin = std::abs(mu - rep.threshold_estimate) <= margin;

  // decidable when the extrapolated partial-sum exponent mu r rho is
  // resolvably away from 1; the margin band only flags proximity
  const double decay = mu * r * fit.rho;
  if (std::abs(decay - 1.0) < 5e-3)
    rep.verdict = "inconclusive";
  else if (decay > 1.0)
    rep.verdict = "convergent";
  else
    rep.verdict = "divergent";
  return rep;
}

std::string SchattenReport::to_json() const {
  Json j;
  j["k"] = k;
  j["l"] = l;
  j["n"] = n;
  j["r"] = r;
  j["mu"] = mu;
  j["threshold"] = threshold;
  j["threshold_estimate"] = threshold_estimate;
  j["verdict"] = verdict;
  j["near_margin"] = near_margin;
  j["fit_exponent"] = fit_exponent;
  j["margin"] = margin;
  return j.dump(2);
}

SvDecayFit sv_decay_fit(std::span<const double> sv, double r) {
  if (sv.size() < 30) throw std::runtime_error("sv_decay_fit: need >= 30 singular values");
  SvDecayFit out;
  out.r = r;

  // drop the numerical-noise floor relative to s_0
  const double floor = sv.front() > 0.0 ? sv.front() * 1e-12 : 0.0;
  std::size_t m = sv.size();
  while (m > 0 && sv[m - 1] <= floor) --m;
  if (m < 30) throw std::runtime_error("sv_decay_fit: fewer than 30 values above the floor");
  out.used = static_cast<long>(m);

  std::vector<double> lx, ly;
  for (std::size_t j = m / 2; j < m; ++j) {
    lx.push_back(std::log(static_cast<double>(j + 1)));
    ly.push_back(std::log(sv[j]));
  }
  out.exponent = -least_squares(lx, ly).slope;

  // blockwise-decreasing s_j j^(1/r) over the last third (robust to the
  // near-degenerate plateaus quantized fixtures produce)
  const std::size_t lo = 2 * m / 3;
  const std::size_t span = m - lo;
  const int blocks = 8;
  out.tail_decreasing = span >= static_cast<std::size_t>(2 * blocks);
  if (out.tail_decreasing) {
    std::vector<double> mean(blocks, 0.0);
    std::vector<long> cnt(blocks, 0);
    for (std::size_t j = lo; j < m; ++j) {
      const int b = static_cast<int>((j - lo) * blocks / span);
      mean[static_cast<std::size_t>(b)] += sv[j] * std::pow(static_cast<double>(j + 1), 1.0 / r);
      ++cnt[static_cast<std::size_t>(b)];
    }
    for (int b = 0; b < blocks; ++b) mean[static_cast<std::size_t>(b)] /= cnt[static_cast<std::size_t>(b)];
    for (int b = 1; b < blocks; ++b)
      if (!(mean[static_cast<std::size_t>(b)] < mean[static_cast<std::size_t>(b - 1)])) {
        out.tail_decreasing = false;
        break;
      }
  }
  out.passes_small_o = (out.exponent > 1.0 / r + 0.05) || out.tail_decreasing;
  return out;
}

std::string SvDecayFit::to_json() const {
  Json j;
  j["exponent"] = exponent;
  j["r"] = r;
  j["passes_small_o"] = passes_small_o;
  j["tail_decreasing"] = tail_decreasing;
  j["used"] = used;
  return j.dump(2);
}

}  // namespace anhosc
