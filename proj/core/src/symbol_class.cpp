#include "anhosc/symbol_class.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "anhosc/report.hpp"
#include "anhosc/sampling.hpp"

namespace anhosc {

namespace {

double lambda_big(std::span<const double> X, int n, int k, int l) {
  double x2 = 0.0, xi2 = 0.0;
  for (int i = 0; i < n; ++i) x2 += X[i] * X[i];
  for (int i = 0; i < n; ++i) xi2 += X[n + i] * X[n + i];
  return std::sqrt(1.0 + std::pow(x2, k) + std::pow(xi2, l));
}

// multi-indices over n variables with |alpha| = order, lexicographic
void enumerate_orders(int n, int order, std::vector<MultiIndex>& out) {
  MultiIndex cur(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, order);
}

struct ShellPoints {
  std::vector<std::vector<double>> points;  // per shell
  std::vector<double> radii;                 // representative per point
};

std::vector<std::vector<std::vector<double>>> shell_samples(int d, const ShellGrid& g) {
  const auto dirs = sphere_points(d, g.dirs_per_shell);
  std::vector<std::vector<std::vector<double>>> shells(g.num_shells);
  for (int j = 0; j < g.num_shells; ++j) {
    const double lo = g.r0 * std::pow(2.0, j);
    for (int t = 0; t < g.radii_per_shell; ++t) {
      const double r = lo * std::pow(2.0, static_cast<double>(t) / g.radii_per_shell);
      for (const auto& u : dirs) {
        std::vector<double> X(d);
        for (int i = 0; i < d; ++i) X[i] = r * u[i];
        shells[j].push_back(std::move(X));
      }
    }
  }
  return shells;
}

}  // namespace

SigmaMembershipReport sigma_membership(const SymbolExpr& a, int k, int l, double m,
                                       int max_order, ShellGrid grid, double normalizer) {
  if (max_order > kMaxDerivativeOrder)
    throw std::invalid_argument("sigma_membership: max_order above configured maximum");
  SigmaMembershipReport rep;
  rep.m = m;
  rep.k = k;
  rep.l = l;
  rep.max_order = max_order;
  rep.normalizer = normalizer;

  const int n = a.n();
  const auto shells = shell_samples(2 * n, grid);

  std::vector<std::pair<MultiIndex, MultiIndex>> orders;
  for (int ob = 0; ob <= max_order; ++ob)
    for (int oa = 0; oa + ob <= max_order; ++oa) {
      std::vector<MultiIndex> betas, alphas;
      enumerate_orders(n, ob, betas);
      enumerate_orders(n, oa, alphas);
      for (const auto& b : betas)
        for (const auto& al : alphas) orders.emplace_back(b, al);
    }

  rep.bounded = true;
  for (const auto& [beta, alpha] : orders) {
    // derivative expression built once per (beta, alpha)
    SymbolExpr d = a;
    for (int i = 0; i < n; ++i)
      for (int rep_i = 0; rep_i < beta[i]; ++rep_i) d = d.partial(i);
    for (int i = 0; i < n; ++i)
      for (int rep_i = 0; rep_i < alpha[i]; ++rep_i) d = d.partial(n + i);

    const double expo = (static_cast<double>(k + l) * m) / (k * l) -
                        static_cast<double>(multi_index_order(beta)) / k -
                        static_cast<double>(multi_index_order(alpha)) / l;
    SeminormEntry entry;
    entry.beta = beta;
    entry.alpha = alpha;
    std::vector<double> shell_sup(shells.size(), 0.0);
    double running = 0.0;
    for (std::size_t j = 0; j < shells.size(); ++j) {
      double sup = 0.0;
      for (const auto& X : shells[j]) {
        const double val = std::abs(d.eval(X)) / std::pow(lambda_big(X, n, k, l), expo);
        sup = std::max(sup, val);
      }
      running = std::max(running, sup);
      shell_sup[j] = running;
    }
    entry.sup_raw = running;
    entry.sup_normalized = running / normalizer;
    const std::size_t J = shell_sup.size();
    if (J >= 3) {
      const double r1 = shell_sup[J - 2] / std::max(shell_sup[J - 3], 1e-300);
      const double r2 = shell_sup[J - 1] / std::max(shell_sup[J - 2], 1e-300);
      entry.last_shell_ratio = std::max(r1, r2);
      entry.plateau_ok = (r1 <= 1.05 && r2 <= 1.05);
    }
    if (!entry.plateau_ok) rep.bounded = false;
    rep.table.push_back(std::move(entry));
  }
  return rep;
}

std::string SigmaMembershipReport::to_json() const {
  Json j;
  j["bounded"] = bounded;
  j["m"] = m;
  j["k"] = k;
  j["l"] = l;
  j["max_order"] = max_order;
  j["normalizer"] = normalizer;
  Json tbl = Json::array();
  for (const auto& e : table) {
    Json je;
    je["beta"] = e.beta;
    je["alpha"] = e.alpha;
    je["sup_raw"] = e.sup_raw;
    je["sup_normalized"] = e.sup_normalized;
    je["last_shell_ratio"] = e.last_shell_ratio;
    je["plateau_ok"] = e.plateau_ok;
    tbl.push_back(std::move(je));
  }
  j["table"] = std::move(tbl);
  j["note"] = "sampled sup over dyadic shells; bounded means plateau within 5% on the last two shells";
  return j.dump(2);
}

double estimate_order(const SymbolExpr& a, int k, int l, ShellGrid shells_cfg) {
  const int n = a.n();
  const auto shells = shell_samples(2 * n, shells_cfg);
  std::vector<double> log_sup, log_lam;
  const double lam_exp = static_cast<double>(k + l) / (k * l);  // lambda_g = Lambda^{(k+l)/(kl)}
  for (const auto& shell : shells) {
    double sup = 0.0;
    double lam_at = 1.0;
    for (const auto& X : shell) {
      const double val = std::abs(a.eval(X));
      if (val > sup) {
        sup = val;
        lam_at = std::pow(lambda_big(X, n, k, l), lam_exp);
      }
    }
    if (sup > 0.0 && lam_at > 1.0) {
      log_sup.push_back(std::log(sup));
      log_lam.push_back(std::log(lam_at));
    }
  }
  if (log_sup.size() < 3)
    throw std::runtime_error("estimate_order: degenerate fit (fewer than 3 shells)");
  // least squares slope
  const std::size_t m = log_sup.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += log_lam[i];
    sy += log_sup[i];
    sxx += log_lam[i] * log_lam[i];
    sxy += log_lam[i] * log_sup[i];
  }
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-12)
    throw std::runtime_error("estimate_order: degenerate fit (no lambda spread)");
  return (m * sxy - sx * sy) / denom;
}

double shell_decay_exponent(const SymbolExpr& a, ShellGrid shells_cfg) {
  const int n = a.n();
  const auto shells = shell_samples(2 * n, shells_cfg);
  std::vector<double> log_sup, log_r;
  for (std::size_t j = 0; j < shells.size(); ++j) {
    double sup = 0.0;
    for (const auto& X : shells[j]) sup = std::max(sup, std::abs(a.eval(X)));
    const double r = shells_cfg.r0 * std::pow(2.0, static_cast<double>(j) + 0.5);
    if (sup > 0.0) {
      log_sup.push_back(std::log(sup));
      log_r.push_back(std::log(r));
    }
  }
  if (log_sup.size() < 3)
    throw std::runtime_error("shell_decay_exponent: fewer than 3 usable shells");
  const std::size_t m = log_sup.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  // fit over the outer half, where the tail behaviour lives
  const std::size_t lo = m / 2;
  const std::size_t cnt = m - lo;
  for (std::size_t i = lo; i < m; ++i) {
    sx += log_r[i];
    sy += log_sup[i];
    sxx += log_r[i] * log_r[i];
    sxy += log_r[i] * log_sup[i];
  }
  const double denom = cnt * sxx - sx * sx;
  return (cnt * sxy - sx * sy) / denom;
}

}  // namespace anhosc
