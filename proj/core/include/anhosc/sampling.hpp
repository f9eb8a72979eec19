// Deterministic sampling utilities: seeded RNG with a hand-rolled normal
// (stdlib distributions are not bit-stable across implementations),
// quasi-uniform sphere coverings, and phase-space point generators.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace anhosc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    // 53-bit mantissa double in [0,1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Box-Muller; one value per call, cache the pair
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  double log_uniform(double lo, double hi) {
    return lo * std::exp(uniform01() * std::log(hi / lo));
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Quasi-uniform covering of the unit sphere S^{dim-1}.  dim=1 gives {-1,+1},
// dim=2 equal angles, dim>=3 a Halton-seeded Gaussian map (deterministic).
std::vector<std::vector<double>> sphere_points(int dim, int count);

// direction uniform on the sphere, deterministic given rng state
std::vector<double> random_direction(int dim, Rng& rng);

// Phase-space sample: log-uniform radius in [r_min, r_max] (10% of draws
// uniform inside the unit ball so the origin region is covered).
std::vector<double> sample_phase_point(int dim, Rng& rng, double r_max = 1e3,
                                       double r_min = 1e-2);

}  // namespace anhosc
