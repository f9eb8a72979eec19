#include "anhosc/groups.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "anhosc/report.hpp"
#include "anhosc/version.hpp"

namespace anhosc {

GroupSymbolFamily engel_spec(double lambda, double mu) {
  if (lambda == 0.0) throw ValidationError("engel_spec: lambda must be nonzero");
  // p(x) = (lambda x^2 - mu/lambda)^2 / 4
  //      = lambda^2/4 x^4 - mu/2 x^2 + mu^2/(4 lambda^2)
  Polynomial p(1);
  p.add_term({4}, lambda * lambda / 4.0);
  p.add_term({2}, -mu / 2.0);
  p.add_term({0}, mu * mu / (4.0 * lambda * lambda));
  Polynomial q(1);
  q.add_term({2}, 1.0);
  GroupSymbolFamily fam{
      "engel",
      {{"lambda", lambda}, {"mu", mu}},
      OscillatorSpec::make(1, 2, 1, std::move(p), std::move(q), 0.5, 0.5)};
  fam.seminorm_normalizer = std::max({1.0, lambda * lambda, mu, (mu / lambda) * (mu / lambda)});
  return fam;
}

GroupSymbolFamily cartan_spec(double kappa, double nu) {
  if (!(kappa > 0.0)) throw ValidationError("cartan_spec: kappa must be positive");
  // p(x) = (kappa^2 x^2 + nu^2)^2 / (4 kappa)
  Polynomial p(1);
  p.add_term({4}, std::pow(kappa, 4) / (4.0 * kappa));
  p.add_term({2}, 2.0 * kappa * kappa * nu * nu / (4.0 * kappa));
  p.add_term({0}, std::pow(nu, 4) / (4.0 * kappa));
  Polynomial q(1);
  q.add_term({2}, 1.0 / kappa);
  GroupSymbolFamily fam{
      "cartan",
      {{"kappa", kappa}, {"nu", nu}},
      OscillatorSpec::make(1, 2, 1, std::move(p), std::move(q), 0.5, 0.5)};
  fam.seminorm_normalizer = std::max({1.0, kappa * kappa, nu * nu});
  return fam;
}

GroupSymbolFamily heisenberg_spec(double nu, int k, int l, int n) {
  if (!(nu > 0.0)) throw ValidationError("heisenberg_spec: nu must be positive");
  if (n < 1 || n > 2) throw ValidationError("heisenberg_spec: n must be 1 or 2");
  if (k < 1 || l < 1) throw ValidationError("heisenberg_spec: k, l must be >= 1");
  // q(xi) = nu^k sum xi_j^2k (degree 2k), p(x) = nu^l sum x_j^2l (degree 2l);
  // the oscillator's own k indexes the x power, so roles swap here
  Polynomial p(n), q(n);
  for (int j = 0; j < n; ++j) {
    MultiIndex a(n, 0);
    a[j] = 2 * l;
    p.add_term(std::move(a), std::pow(nu, l));
    MultiIndex b(n, 0);
    b[j] = 2 * k;
    q.add_term(std::move(b), std::pow(nu, k));
  }
  GroupSymbolFamily fam{
      "heisenberg",
      {{"nu", nu},
       {"k", static_cast<double>(k)},
       {"l", static_cast<double>(l)},
       {"n", static_cast<double>(n)}},
      OscillatorSpec::make(n, l, k, std::move(p), std::move(q), 0.5, 0.5)};
  fam.seminorm_normalizer = std::max(1.0, std::pow(nu, std::max(k, l)));
  return fam;
}

namespace {

GroupSymbolFamily family_for(const std::string& kind,
                             const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
  };
  if (kind == "engel") return engel_spec(get("lambda", 1.0), get("mu", 0.0));
  if (kind == "cartan") return cartan_spec(get("kappa", 1.0), get("nu", 0.0));
  if (kind == "heisenberg")
    return heisenberg_spec(get("nu", 1.0), static_cast<int>(get("k", 1)),
                           static_cast<int>(get("l", 1)), static_cast<int>(get("n", 1)));
  throw ValidationError("unknown group kind: " + kind);
}

int worker_count(int requested, std::size_t points) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("ANH_SPECTRA_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  if (t <= 0) t = 1;
  return std::min<int>(t, static_cast<int>(std::max<std::size_t>(points, 1)));
}

}  // namespace

SweepBundle sweep(const std::string& group_kind,
                  const std::vector<std::map<std::string, double>>& grid, unsigned stages,
                  const SweepOptions& opts) {
  SweepBundle bundle;
  bundle.group = group_kind;
  bundle.stages = stages;
  bundle.points.resize(grid.size());

  auto run_point = [&](std::size_t idx) {
    SweepPoint& pt = bundle.points[idx];
    pt.parameters = grid[idx];
    try {
      const GroupSymbolFamily fam = family_for(group_kind, grid[idx]);
      Json rep;
      rep["group"] = fam.group;
      rep["normalizer"] = fam.seminorm_normalizer;
      Spectrum sp;
      if (stages & (kStageSpectrum | kStageZeta | kStageCounting | kStageSchatten)) {
        sp = spectrum(fam.realized, opts.N, opts.dN);
        rep["spectrum"]["converged_count"] = sp.converged_count;
        rep["spectrum"]["lambda0"] = sp.eigenvalues.front();
        rep["spectrum"]["basis_size"] = sp.basis_size;
      }
      if (stages & kStageZeta) {
        const ZetaResult z = zeta(sp, opts.zeta_s);
        rep["zeta"] = Json::parse(z.to_json());
      }
      if (stages & kStageCounting) {
        const CountingFit cf = counting_fit(sp);
        rep["counting"] = Json::parse(cf.to_json());
      }
      if (stages & kStageSchatten) {
        Json arr = Json::array();
        for (double r : opts.schatten_r) {
          const double thr = fam.schatten_threshold(r);
          for (double off : opts.schatten_gamma_offsets) {
            const SchattenReport sr = schatten_verdict(sp, thr + off, r, 1.0);
            Json je = Json::parse(sr.to_json());
            je["gamma"] = thr + off;
            je["boundary"] = thr;
            arr.push_back(std::move(je));
          }
        }
        rep["schatten"] = std::move(arr);
      }
      pt.report = std::move(rep);
      pt.ok = true;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
  };

  const int workers = worker_count(opts.threads, grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_point(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= grid.size()) return;
          run_point(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  Json manifest;
  manifest["tool"] = "anhosc";
  manifest["version"] = kVersion;
  manifest["group"] = group_kind;
  manifest["stages"] = stages;
  manifest["points"] = grid.size();
  manifest["N"] = opts.N;
  manifest["dN"] = opts.dN;
  Json params = Json::array();
  for (const auto& pt : grid) params.push_back(pt);
  manifest["parameters"] = std::move(params);
  bundle.manifest = std::move(manifest);
  return bundle;
}

Json SweepBundle::to_json() const {
  Json j;
  j["manifest"] = manifest;
  Json arr = Json::array();
  for (const auto& pt : points) {
    Json jp;
    jp["parameters"] = pt.parameters;
    jp["ok"] = pt.ok;
    if (pt.ok)
      jp["report"] = pt.report;
    else
      jp["error"] = pt.error;
    arr.push_back(std::move(jp));
  }
  j["points"] = std::move(arr);
  return j;
}

void SweepBundle::write(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "points");
  {
    std::ofstream os(dir / "manifest.json");
    os << manifest.dump(2) << "\n";
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const fs::path pdir = dir / "points" / std::to_string(i);
    fs::create_directories(pdir);
    std::ofstream os(pdir / "report.json");
    Json jp;
    jp["parameters"] = points[i].parameters;
    jp["ok"] = points[i].ok;
    if (points[i].ok)
      jp["report"] = points[i].report;
    else
      jp["error"] = points[i].error;
    os << jp.dump(2) << "\n";
  }
  // cross-parameter table: ground state vs parameters
  std::ofstream table(dir / "ground_state.csv");
  table << "index,ok";
  if (!points.empty())
    for (const auto& [key, val] : points.front().parameters) table << "," << key;
  table << ",lambda0\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    table << i << "," << (points[i].ok ? 1 : 0);
    for (const auto& [key, val] : points[i].parameters) table << "," << format_double(val);
    if (points[i].ok && points[i].report.contains("spectrum"))
      table << "," << format_double(points[i].report["spectrum"]["lambda0"].get<double>());
    else
      table << ",";
    table << "\n";
  }
}

}  // namespace anhosc
