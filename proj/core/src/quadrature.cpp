#include "anhosc/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "anhosc/report.hpp"
#include "anhosc/sampling.hpp"

namespace anhosc {

namespace {

// 15-point Kronrod / 7-point Gauss pair on [-1, 1] (QUADPACK nodes)
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct PanelEval {
  double kronrod = 0.0;
  double gauss = 0.0;
};

PanelEval gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  PanelEval out;
  const double fc = f(c);
  evals += 15;
  out.kronrod = kWgk[7] * fc;
  out.gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fv = f(c - dx) + f(c + dx);
    out.kronrod += kWgk[i] * fv;
    if (i % 2 == 1) out.gauss += kWg[i / 2] * fv;
  }
  out.kronrod *= h;
  out.gauss *= h;
  return out;
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           int depth, int max_depth, QuadResult& acc) {
  const PanelEval pe = gk15(f, a, b, acc.evals);
  const double err = std::abs(pe.kronrod - pe.gauss);
  if (depth >= max_depth || err <= tol) {
    acc.value += pe.kronrod;
    acc.error_estimate += err;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, tol * 0.5, depth + 1, max_depth, acc);
  adapt(f, c, b, tol * 0.5, depth + 1, max_depth, acc);
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  QuadResult acc;
  adapt(f, a, b, tol, 0, max_depth, acc);
  return acc;
}

IntegrabilityCheck check_integrability(const SymbolExpr& a) {
  IntegrabilityCheck out;
  out.decay_exponent = shell_decay_exponent(a);
  out.integrable = out.decay_exponent < -2.0 * a.n();
  return out;
}

namespace {

// radius beyond which the symbol is negligible, from dyadic shell sups
double integration_radius(const SymbolExpr& a) {
  double r = 1.0;
  const auto dirs = sphere_points(2 * a.n(), 64);
  double scale = std::abs(a.eval(std::vector<double>(2 * a.n(), 0.0)));
  for (const auto& u : dirs) scale = std::max(scale, std::abs(a.eval(u)));
  for (int j = 0; j < 24; ++j) {
    r = std::pow(2.0, j);
    double sup = 0.0;
    for (const auto& u : dirs) {
      std::vector<double> X(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) X[i] = r * u[i];
      sup = std::max(sup, std::abs(a.eval(X)));
    }
    if (sup < 1e-16 * std::max(scale, 1e-300)) break;
  }
  return r;
}

// nested tensor integration over [-R, R]^d via recursive adaptive passes
double tensor_integral(const SymbolExpr& a, double R, double tol, long& evals) {
  const int d = 2 * a.n();
  std::vector<double> X(d, 0.0);
  std::function<double(int, double)> level = [&](int axis, double level_tol) -> double {
    auto f = [&](double t) -> double {
      X[static_cast<std::size_t>(axis)] = t;
      if (axis + 1 == d) {
        ++evals;
        return a.eval(X);
      }
      return level(axis + 1, level_tol * 0.3);
    };
    QuadResult r;
    // dyadic panels toward the boundary keep the peak region resolved
    std::vector<double> cuts{0.0};
    for (double c = 1.0; c < R; c *= 2.0) cuts.push_back(c);
    cuts.push_back(R);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const QuadResult pos = integrate_1d(f, cuts[i], cuts[i + 1], level_tol, 24);
      const QuadResult neg = integrate_1d(f, -cuts[i + 1], -cuts[i], level_tol, 24);
      r.value += pos.value + neg.value;
      r.error_estimate += pos.error_estimate + neg.error_estimate;
    }
    return r.value;
  };
  return level(0, tol);
}

double polar_integral(const SymbolExpr& a, double R, double tol, long& evals) {
  if (a.n() != 1) throw std::runtime_error("polar scheme: n = 1 only");
  auto radial = [&](double theta) -> double {
    const double ct = std::cos(theta), st = std::sin(theta);
    auto f = [&](double r) -> double {
      ++evals;
      const double X[2] = {r * ct, r * st};
      return r * a.eval(std::span<const double>(X, 2));
    };
    QuadResult acc;
    std::vector<double> cuts{0.0};
    for (double c = 1.0; c < R; c *= 2.0) cuts.push_back(c);
    cuts.push_back(R);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const QuadResult q = integrate_1d(f, cuts[i], cuts[i + 1], tol * 0.3, 24);
      acc.value += q.value;
    }
    return acc.value;
  };
  const QuadResult ang = integrate_1d(radial, 0.0, 6.283185307179586476925286766559, tol, 20);
  return ang.value;
}

}  // namespace

QuadResult phase_space_integral(const SymbolExpr& a, QuadScheme scheme, double tol) {
  const IntegrabilityCheck chk = check_integrability(a);
  if (!chk.integrable)
    throw std::runtime_error(
        "phase_space_integral: integrability check failed (shell decay exponent " +
        format_double(chk.decay_exponent) + " not < -2n)");
  const double R = integration_radius(a);
  QuadResult out;
  const double coarse = (scheme == QuadScheme::kCartesian)
                            ? tensor_integral(a, R, tol * 10.0, out.evals)
                            : polar_integral(a, R, tol * 10.0, out.evals);
  const double fine = (scheme == QuadScheme::kCartesian)
                          ? tensor_integral(a, R, tol, out.evals)
                          : polar_integral(a, R, tol, out.evals);
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse) + tol * std::abs(fine);
  return out;
}

WeightIntegrability weight_integrability(const OscillatorSpec& spec, double mu, double r) {
  WeightIntegrability out;
  out.analytic = mu > static_cast<double>(spec.n()) / r;  // strict
  const SymbolExpr integrand = spec.lambda_g_expr(-mu * r);
  const IntegrabilityCheck chk = check_integrability(integrand);
  if (spec.n() == 1 && chk.integrable) {
    out.numeric_attempted = true;
    const QuadResult q = phase_space_integral(integrand, QuadScheme::kCartesian, 1e-6);
    out.numeric_finite = std::isfinite(q.value);
    out.integral = q.value;
  }
  return out;
}

std::string WeightIntegrability::to_json() const {
  Json j;
  j["analytic"] = analytic;
  j["numeric_attempted"] = numeric_attempted;
  j["numeric_finite"] = numeric_finite;
  if (numeric_attempted) j["integral"] = integral;
  return j.dump(2);
}

}  // namespace anhosc
