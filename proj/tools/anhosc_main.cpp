// anhosc: spectral toolkit CLI for anharmonic oscillators q(D) + p(x).
// Subcommands map one-to-one onto the library operations; every run can
// write a manifest that replays bit-identically.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "anhosc/groups.hpp"
#include "anhosc/metric.hpp"
#include "anhosc/quadrature.hpp"
#include "anhosc/quantize.hpp"
#include "anhosc/report.hpp"
#include "anhosc/specfn.hpp"
#include "anhosc/spectrum.hpp"
#include "anhosc/symbol_class.hpp"
#include "anhosc/version.hpp"

namespace fs = std::filesystem;
using namespace anhosc;

namespace {

struct Options {
  int k = 0, l = 0, n = 1;
  std::string p_text, q_text;
  double p0 = 0.5, q0 = 0.5;
  bool harmonic = false;
  int N = 256, dN = 32;
  double r = 1.0, mu = 1.0, gamma = 1.0, s = 2.0;
  double grid_L = 12.0;
  int grid_M = 384;
  double t = 0.5;
  long samples = 10000;
  std::uint64_t seed = 12345;
  double m_order = std::nan("");
  int max_order = 3;
  std::string group;
  std::string grid_lambda = "1", grid_mu = "0", grid_kappa = "1", grid_nu = "1";
  int gk = 1, gl = 1, gn = 1;
  std::string stages = "spectrum,schatten";
  std::string out;
  std::string format = "json";
  std::string method = "hermite";
  double fd_L = 8.0;
  int fd_M = 2000;
};

Json options_to_json(const Options& o) {
  Json j;
  j["k"] = o.k;
  j["l"] = o.l;
  j["n"] = o.n;
  j["p"] = o.p_text;
  j["q"] = o.q_text;
  j["p0"] = o.p0;
  j["q0"] = o.q0;
  j["harmonic"] = o.harmonic;
  j["N"] = o.N;
  j["dN"] = o.dN;
  j["r"] = o.r;
  j["mu"] = o.mu;
  j["gamma"] = o.gamma;
  j["s"] = o.s;
  j["grid_L"] = o.grid_L;
  j["grid_M"] = o.grid_M;
  j["t"] = o.t;
  j["samples"] = o.samples;
  j["seed"] = o.seed;
  if (!std::isnan(o.m_order)) j["m"] = o.m_order;
  j["max_order"] = o.max_order;
  j["group"] = o.group;
  j["grid_lambda"] = o.grid_lambda;
  j["grid_mu"] = o.grid_mu;
  j["grid_kappa"] = o.grid_kappa;
  j["grid_nu"] = o.grid_nu;
  j["gk"] = o.gk;
  j["gl"] = o.gl;
  j["gn"] = o.gn;
  j["stages"] = o.stages;
  j["out"] = o.out;
  j["format"] = o.format;
  j["method"] = o.method;
  j["fd_L"] = o.fd_L;
  j["fd_M"] = o.fd_M;
  return j;
}

Options options_from_json(const Json& j) {
  Options o;
  o.k = j.value("k", 0);
  o.l = j.value("l", 0);
  o.n = j.value("n", 1);
  o.p_text = j.value("p", std::string());
  o.q_text = j.value("q", std::string());
  o.p0 = j.value("p0", 0.5);
  o.q0 = j.value("q0", 0.5);
  o.harmonic = j.value("harmonic", false);
  o.N = j.value("N", 256);
  o.dN = j.value("dN", 32);
  o.r = j.value("r", 1.0);
  o.mu = j.value("mu", 1.0);
  o.gamma = j.value("gamma", 1.0);
  o.s = j.value("s", 2.0);
  o.grid_L = j.value("grid_L", 12.0);
  o.grid_M = j.value("grid_M", 384);
  o.t = j.value("t", 0.5);
  o.samples = j.value("samples", 10000L);
  o.seed = j.value("seed", static_cast<std::uint64_t>(12345));
  if (j.contains("m")) o.m_order = j["m"].get<double>();
  o.max_order = j.value("max_order", 3);
  o.group = j.value("group", std::string());
  o.grid_lambda = j.value("grid_lambda", std::string("1"));
  o.grid_mu = j.value("grid_mu", std::string("0"));
  o.grid_kappa = j.value("grid_kappa", std::string("1"));
  o.grid_nu = j.value("grid_nu", std::string("1"));
  o.gk = j.value("gk", 1);
  o.gl = j.value("gl", 1);
  o.gn = j.value("gn", 1);
  o.stages = j.value("stages", std::string("spectrum,schatten"));
  o.out = j.value("out", std::string());
  o.format = j.value("format", std::string("json"));
  o.method = j.value("method", std::string("hermite"));
  o.fd_L = j.value("fd_L", 8.0);
  o.fd_M = j.value("fd_M", 2000);
  return o;
}

OscillatorSpec resolve_spec(const Options& o) {
  int k = o.k, l = o.l;
  if (o.harmonic || (o.p_text.empty() && o.q_text.empty())) {
    if (k <= 0) k = 1;
    if (l <= 0) l = 1;
    return OscillatorSpec::prototype(o.n, k, l);
  }
  Polynomial p(1), q(1);
  if (!o.p_text.empty())
    p = parse_polynomial(o.p_text, o.n, o.n);
  else
    p = OscillatorSpec::prototype(o.n, k > 0 ? k : 1, 1).p();
  if (!o.q_text.empty())
    q = parse_polynomial(o.q_text, o.n, 0);
  else
    q = OscillatorSpec::prototype(o.n, 1, l > 0 ? l : 1).q();
  if (k <= 0) {
    if (p.degree() % 2 != 0)
      throw ValidationError("p has odd degree " + std::to_string(p.degree()) +
                            "; not in any P_2k");
    k = p.degree() / 2;
  }
  if (l <= 0) {
    if (q.degree() % 2 != 0)
      throw ValidationError("q has odd degree " + std::to_string(q.degree()) +
                            "; not in any P_2l");
    l = q.degree() / 2;
  }
  return OscillatorSpec::make(o.n, k, l, std::move(p), std::move(q), o.p0, o.q0);
}

void write_output(const Options& o, const std::string& command, const std::string& filename,
                  const std::string& payload) {
  if (o.out.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
    return;
  }
  fs::create_directories(o.out);
  std::ofstream os(fs::path(o.out) / filename, std::ios::binary);
  os << payload;
  Manifest man;
  man.version = kVersion;
  man.command = command;
  man.config = options_to_json(o);
  std::ofstream ms(fs::path(o.out) / "manifest.json", std::ios::binary);
  ms << man.to_json().dump(2) << "\n";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw ValidationError("empty parameter grid");
  return out;
}

int cmd_eig(const Options& o) {
  const OscillatorSpec spec = resolve_spec(o);
  if (o.method != "hermite" && o.method != "fd")
    throw ValidationError("eig: --method must be hermite or fd");
  const Spectrum sp = (o.method == "fd") ? fd_spectrum(spec, o.fd_L, o.fd_M)
                                         : spectrum(spec, o.N, o.dN);
  std::ostringstream payload;
  if (o.format == "json") {
    Json j;
    j["spec_hash"] = spec.hash();
    j["method"] = sp.method;
    j["basis_size"] = sp.basis_size;
    j["converged_count"] = sp.converged_count;
    j["eigenvalues"] = json_vector(sp.eigenvalues);
    payload << j.dump(2) << "\n";
    write_output(o, "eig", "eig.json", payload.str());
  } else {
    write_spectrum_csv(payload, sp);
    write_output(o, "eig", "eig.csv", payload.str());
  }
  return 0;
}

int cmd_zeta(const Options& o) {
  const OscillatorSpec spec = resolve_spec(o);
  const Spectrum sp = spectrum(spec, o.N, o.dN);
  const ZetaResult z = zeta(sp, o.s);
  write_output(o, "zeta", "zeta.json", z.to_json() + "\n");
  return 0;
}

int cmd_counting(const Options& o) {
  const OscillatorSpec spec = resolve_spec(o);
  const Spectrum sp = spectrum(spec, o.N, o.dN);
  const CountingFit cf = counting_fit(sp);
  if (o.format == "csv") {
    std::ostringstream payload;
    payload << "# format=anhosc-counting-v1\n";
    payload << "# exponent=" << format_double(cf.exponent) << "\n";
    payload << "# volume_exponent=" << format_double(cf.volume_exponent) << "\n";
    payload << "lambda,count\n";
    for (std::size_t i = 0; i < cf.lambda.size(); ++i)
      payload << format_double(cf.lambda[i]) << "," << cf.counts[i] << "\n";
    write_output(o, "counting", "counting.csv", payload.str());
  } else {
    write_output(o, "counting", "counting.json", cf.to_json() + "\n");
  }
  return 0;
}

int cmd_schatten(const Options& o) {
  Json j;
  if (!o.group.empty()) {
    // in the group context --mu is the Engel representation parameter and
    // --gamma carries the Schatten exponent
    GroupSymbolFamily fam = [&] {
      if (o.group == "engel") return engel_spec(parse_grid(o.grid_lambda)[0], o.mu);
      if (o.group == "cartan")
        return cartan_spec(parse_grid(o.grid_kappa)[0], parse_grid(o.grid_nu)[0]);
      if (o.group == "heisenberg")
        return heisenberg_spec(parse_grid(o.grid_nu)[0], o.gk, o.gl, o.gn);
      throw ValidationError("unknown group: " + o.group);
    }();
    const Spectrum sp = spectrum(fam.realized, o.N, o.dN);
    const SchattenReport rep = schatten_verdict(sp, o.gamma, o.r, 1.0);
    j = Json::parse(rep.to_json());
    j["group"] = o.group;
    j["boundary"] = fam.schatten_threshold(o.r);
  } else {
    const OscillatorSpec spec = resolve_spec(o);
    const Spectrum sp = spectrum(spec, o.N, o.dN);
    const SchattenReport rep = schatten_verdict(sp, o.mu, o.r);
    j = Json::parse(rep.to_json());
  }
  write_output(o, "schatten", "schatten.json", j.dump(2) + "\n");
  return 0;
}

int cmd_trace(const Options& o) {
  const OscillatorSpec spec = resolve_spec(o);
  if (spec.n() != 1) throw ValidationError("trace: 1D only");
  const SymbolExpr a = SymbolExpr::pow(spec.weight_poly(), spec.n(), -o.mu);
  PhaseGrid grid{o.grid_L, o.grid_L, o.grid_M, o.grid_M};
  const QuantizedOperator Q = quantize(a, o.t, grid);
  const std::complex<double> tr = op_trace(Q);
  const QuadResult integral = phase_space_integral(a, QuadScheme::kCartesian, 1e-8);
  const QuantizedOperator Qr = quantize(a, o.t, grid.refined());
  const std::complex<double> tr_r = op_trace(Qr);
  Json j;
  j["t"] = o.t;
  j["trace_re"] = tr.real();
  j["trace_im"] = tr.imag();
  j["trace_refined_re"] = tr_r.real();
  j["integral"] = integral.value;
  j["integral_error"] = integral.error_estimate;
  j["rel_gap"] = std::abs(tr.real() - integral.value) / std::abs(integral.value);
  j["rel_gap_refined"] = std::abs(tr_r.real() - integral.value) / std::abs(integral.value);
  j["grid"] = {{"Lx", grid.Lx}, {"Mx", grid.Mx}};
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    std::ofstream sv_os(fs::path(o.out) / "singular_values.csv", std::ios::binary);
    write_sv_csv(sv_os, singular_values(Q));
  }
  write_output(o, "trace", "trace.json", j.dump(2) + "\n");
  return 0;
}

int cmd_verify_symbol(const Options& o) {
  const OscillatorSpec spec = resolve_spec(o);
  const SymbolExpr T = SymbolExpr::from_parts(spec.p(), spec.q(), spec.n());
  const double m = std::isnan(o.m_order)
                       ? 2.0 * spec.k() * spec.l() / static_cast<double>(spec.k() + spec.l())
                       : o.m_order;
  const SigmaMembershipReport rep = sigma_membership(T, spec.k(), spec.l(), m, o.max_order);
  const double mhat = estimate_order(T, spec.k(), spec.l());
  Json j = Json::parse(rep.to_json());
  j["estimated_order"] = mhat;
  j["nominal_order"] = 2.0 * spec.k() * spec.l() / static_cast<double>(spec.k() + spec.l());
  write_output(o, "verify-symbol", "verify_symbol.json", j.dump(2) + "\n");
  return 0;
}

int cmd_verify_metric(const Options& o) {
  const OscillatorSpec spec = resolve_spec(o);
  Json j;
  j["spec_hash"] = spec.hash();
  Json arr = Json::array();
  arr.push_back(Json::parse(check_slowness(spec, o.samples, o.seed).to_json()));
  arr.push_back(Json::parse(check_uncertainty(spec, o.samples, o.seed + 1).to_json()));
  arr.push_back(Json::parse(check_temperateness(spec, o.samples, o.seed + 2).to_json()));
  const Polynomial W = spec.weight_poly();
  WeightFn M = [&W](std::span<const double> X) { return W.eval(X); };
  for (auto& rep : check_weight(spec, M, o.samples, o.seed + 3))
    arr.push_back(Json::parse(rep.to_json()));
  j["reports"] = std::move(arr);
  bool all = true;
  for (const auto& rep : j["reports"])
    if (!rep["pass"].get<bool>()) all = false;
  j["all_pass"] = all;
  write_output(o, "verify-metric", "verify_metric.json", j.dump(2) + "\n");
  return 0;
}

int cmd_compose(const Options& o) {
  if (o.p_text.empty() || o.q_text.empty())
    throw ValidationError("compose needs --q (symbol in xi) and --p (symbol in x)");
  const Polynomial a = parse_polynomial(o.q_text, 1, 0);
  const Polynomial b = parse_polynomial(o.p_text, 1, 1);
  const CPolynomial c = kn_compose_exact(a, b);
  PhaseGrid grid{o.grid_L, o.grid_L, o.grid_M, 2 * o.grid_M};
  const ComposeCheck chk = compose_matrix_check(a, b, grid);
  Json j;
  Json terms = Json::array();
  for (const auto& [alpha, coeff] : c.terms()) {
    Json t;
    t["alpha"] = alpha;
    t["re"] = coeff.real();
    t["im"] = coeff.imag();
    terms.push_back(std::move(t));
  }
  j["c_terms"] = std::move(terms);
  j["term_count"] = c.terms().size();
  j["matrix_check_rel_error"] = chk.rel_error;
  j["window_vectors"] = chk.window_vectors;
  j["window_radius"] = chk.window_radius;
  write_output(o, "compose", "compose.json", j.dump(2) + "\n");
  return 0;
}

int cmd_group(const Options& o) {
  if (o.group.empty())
    throw ValidationError("group: --group engel|cartan|heisenberg required");
  unsigned stages = 0;
  {
    std::stringstream ss(o.stages);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "spectrum")
        stages |= kStageSpectrum;
      else if (item == "zeta")
        stages |= kStageZeta;
      else if (item == "counting")
        stages |= kStageCounting;
      else if (item == "schatten")
        stages |= kStageSchatten;
      else if (!item.empty())
        throw ValidationError("unknown stage: " + item);
    }
  }
  std::vector<std::map<std::string, double>> grid;
  if (o.group == "engel") {
    for (double lam : parse_grid(o.grid_lambda))
      for (double mu : parse_grid(o.grid_mu)) grid.push_back({{"lambda", lam}, {"mu", mu}});
  } else if (o.group == "cartan") {
    for (double kap : parse_grid(o.grid_kappa))
      for (double nu : parse_grid(o.grid_nu)) grid.push_back({{"kappa", kap}, {"nu", nu}});
  } else if (o.group == "heisenberg") {
    for (double nu : parse_grid(o.grid_nu))
      grid.push_back({{"nu", nu},
                      {"k", static_cast<double>(o.gk)},
                      {"l", static_cast<double>(o.gl)},
                      {"n", static_cast<double>(o.gn)}});
  } else {
    throw ValidationError("unknown group: " + o.group);
  }
  SweepOptions sw;
  sw.N = o.N;
  sw.dN = o.dN;
  sw.zeta_s = o.s;
  const SweepBundle bundle = sweep(o.group, grid, stages, sw);
  if (o.out.empty()) {
    std::cout << bundle.to_json().dump(2) << "\n";
  } else {
    fs::create_directories(o.out);
    bundle.write(o.out);
    Manifest man;
    man.version = kVersion;
    man.command = "group";
    man.config = options_to_json(o);
    std::ofstream ms(fs::path(o.out) / "manifest.json", std::ios::binary);
    ms << man.to_json().dump(2) << "\n";
  }
  return 0;
}

int dispatch(const std::string& command, const Options& o);

int cmd_replay(const std::string& manifest_path) {
  std::ifstream is(manifest_path);
  if (!is) throw ValidationError("replay: cannot open manifest " + manifest_path);
  Json j = Json::parse(is);
  const Manifest man = Manifest::from_json(j);
  Options o = options_from_json(man.config);
  return dispatch(man.command, o);
}

int dispatch(const std::string& command, const Options& o) {
  if (command == "eig") return cmd_eig(o);
  if (command == "zeta") return cmd_zeta(o);
  if (command == "counting") return cmd_counting(o);
  if (command == "schatten") return cmd_schatten(o);
  if (command == "trace") return cmd_trace(o);
  if (command == "verify-symbol") return cmd_verify_symbol(o);
  if (command == "verify-metric") return cmd_verify_metric(o);
  if (command == "compose") return cmd_compose(o);
  if (command == "group") return cmd_group(o);
  throw ValidationError("unknown command in manifest: " + command);
}

}  // namespace

std::vector<std::string> inject_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string cfg_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      cfg_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      cfg_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (cfg_path.empty() || args.empty()) return args;
  std::ifstream is(cfg_path);
  if (!is) throw ValidationError("cannot open config file " + cfg_path);
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto trim = [](std::string& t) {
      t.erase(0, t.find_first_not_of(" \t"));
      t.erase(t.find_last_not_of(" \t") + 1);
    };
    trim(key);
    trim(val);
    injected.push_back("--" + key);
    injected.push_back(val);
  }
  // file tokens go right after the subcommand; later flags take precedence
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

int main(int argc, char** argv) {
  CLI::App app{"anhosc: spectral toolkit for anharmonic oscillators q(D) + p(x)"};
  app.require_subcommand(1);

  Options o;
  std::string manifest_path;

  auto add_common = [&](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--k", o.k, "x-power index (p in P_2k); inferred from --p if omitted");
    sub->add_option("--l", o.l, "xi-power index (q in P_2l); inferred from --q if omitted");
    sub->add_option("--n", o.n, "dimension (1..3)");
    sub->add_option("--p", o.p_text, "potential polynomial in x1..xn");
    sub->add_option("--q", o.q_text, "symbol polynomial in xi1..xin");
    sub->add_option("--p0", o.p0, "positivity shift for p");
    sub->add_option("--q0", o.q0, "positivity shift for q");
    sub->add_flag("--harmonic", o.harmonic, "use the harmonic prototype");
    sub->add_option("--N", o.N, "per-axis Hermite basis size");
    sub->add_option("--dN", o.dN, "basis increment for convergence flagging");
    sub->add_option("--r", o.r, "Schatten index");
    sub->add_option("--mu", o.mu, "negative-power exponent");
    sub->add_option("--gamma", o.gamma, "group Schatten exponent");
    sub->add_option("--s", o.s, "zeta argument");
    sub->add_option("--grid-L", o.grid_L, "phase grid half-width");
    sub->add_option("--grid-M", o.grid_M, "phase grid points per axis");
    sub->add_option("--t", o.t, "quantization parameter");
    sub->add_option("--samples", o.samples, "sample count for axiom checks");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--m", o.m_order, "symbol class order for verify-symbol");
    sub->add_option("--max-order", o.max_order, "max derivative order");
    sub->add_option("--out", o.out, "output directory (stdout if omitted)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--method", o.method, "eig backend: hermite or fd oracle");
    sub->add_option("--fd-L", o.fd_L, "finite-difference box half-width");
    sub->add_option("--fd-M", o.fd_M, "finite-difference grid points");
  };
  auto add_group_opts = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "engel | cartan | heisenberg");
    sub->add_option("--lambda", o.grid_lambda, "Engel lambda grid (comma separated)");
    sub->add_option("--g-mu", o.grid_mu, "Engel mu grid (comma separated)");
    sub->add_option("--kappa", o.grid_kappa, "Cartan kappa grid");
    sub->add_option("--nu", o.grid_nu, "Cartan/Heisenberg nu grid");
    sub->add_option("--gk", o.gk, "Heisenberg k");
    sub->add_option("--gl", o.gl, "Heisenberg l");
    sub->add_option("--gn", o.gn, "Heisenberg n");
    sub->add_option("--stages", o.stages, "sweep stages, comma separated");
  };

  const std::pair<const char*, const char*> commands[] = {
      {"eig", "eigenvalues of q(D) + p(x) (hermite basis or fd oracle)"},
      {"zeta", "spectral zeta value with tail completion"},
      {"counting", "eigenvalue counting fit against the volume exponent"},
      {"schatten", "Schatten class verdict for a negative power"},
      {"trace", "quantized-operator trace vs the phase-space integral"},
      {"verify-symbol", "symbol class membership and order estimate"},
      {"verify-metric", "sampled falsification of the metric axioms"},
      {"compose", "exact Kohn-Nirenberg composition with matrix check"},
      {"group", "parameter sweep over a Lie group symbol family"},
  };
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const auto& [name, blurb] : commands) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    add_common(sub);
    add_group_opts(sub);
    subs.emplace_back(name, sub);
  }
  CLI::App* replay = app.add_subcommand("replay", "re-run a recorded manifest");
  replay->add_option("--manifest", manifest_path, "path to manifest.json")->required();

  try {
    std::vector<std::string> args = inject_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (replay->parsed()) return cmd_replay(manifest_path);
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) return dispatch(name, o);
    throw ValidationError("no subcommand");
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << "cli error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
