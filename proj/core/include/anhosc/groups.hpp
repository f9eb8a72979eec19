// Model oscillators from sub-Laplacian symbols on the Engel, Cartan and
// Heisenberg groups, realized as positive operators H so that (I+H)^-gamma
// feeds the Schatten pipeline, plus parameter sweeps.
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "anhosc/oscillator.hpp"
#include "anhosc/report.hpp"
#include "anhosc/specfn.hpp"

namespace anhosc {

struct GroupSymbolFamily {
  std::string group;  // engel | cartan | heisenberg
  std::map<std::string, double> parameters;
  OscillatorSpec realized;  // positive model operator H
  double seminorm_normalizer = 1.0;  // C_{lambda mu} (Engel) or C_nu (Heisenberg)

  // Schatten threshold for (I + H)^(-gamma) in S_r
  double schatten_threshold(double r) const {
    return (realized.k() + realized.l()) * realized.n() /
           (2.0 * realized.k() * realized.l() * r);
  }
};

// H = -sigma_L with p(x) = (lambda x^2 - mu/lambda)^2 / 4, q(xi) = xi^2.
GroupSymbolFamily engel_spec(double lambda, double mu);
// H with p(x) = (kappa^2 x^2 + nu^2)^2 / (4 kappa), q(xi) = xi^2 / kappa.
GroupSymbolFamily cartan_spec(double kappa, double nu);
// sigma_{k,l,nu} = nu^k sum xi_j^2k + nu^l sum x_j^2l; note the realized
// OscillatorSpec carries (k, l) swapped since its k indexes the x power.
GroupSymbolFamily heisenberg_spec(double nu, int k, int l, int n);

enum SweepStage : unsigned {
  kStageSpectrum = 1u,
  kStageZeta = 2u,
  kStageCounting = 4u,
  kStageSchatten = 8u,
};

struct SweepOptions {
  int N = 320;
  int dN = 32;
  double zeta_s = 2.0;
  std::vector<double> schatten_r{1.0, 2.0};
  std::vector<double> schatten_gamma_offsets{0.2, -0.2};
  int threads = 0;  // 0: ANH_SPECTRA_THREADS or hardware
};

struct SweepPoint {
  std::map<std::string, double> parameters;
  bool ok = false;
  std::string error;
  Json report;  // per-stage results
};

struct SweepBundle {
  std::string group;
  unsigned stages = 0;
  std::vector<SweepPoint> points;
  Json manifest;

  Json to_json() const;
  // directory tree: manifest.json, points/<idx>/report.json, tables/*.csv
  void write(const std::filesystem::path& dir) const;
};

// Per-point failures are recorded, never abort the sweep.  Points run on a
// worker pool (capped by ANH_SPECTRA_THREADS); outputs are merged in
// parameter order so results are deterministic.
SweepBundle sweep(const std::string& group_kind,
                  const std::vector<std::map<std::string, double>>& grid, unsigned stages,
                  const SweepOptions& opts = {});

}  // namespace anhosc
