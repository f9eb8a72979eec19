#include "anhosc/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace anhosc {

namespace {

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

// Acklam-style inverse normal CDF, ~1e-9 accurate; plenty for coverings.
double inv_norm_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > phigh) {
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

std::vector<std::vector<double>> sphere_points(int dim, int count) {
  if (dim < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  if (count < 1) throw std::invalid_argument("sphere sample count must be >= 1");
  std::vector<std::vector<double>> pts;
  if (dim == 1) {
    pts.push_back({1.0});
    pts.push_back({-1.0});
    return pts;
  }
  if (dim == 2) {
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
      double th = 6.283185307179586 * i / count;
      pts.push_back({std::cos(th), std::sin(th)});
    }
    return pts;
  }
  static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19};
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<double> v(dim);
    double norm2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      double u = halton(static_cast<std::uint64_t>(i) + 1, bases[j % 8]);
      u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
      v[j] = inv_norm_cdf(u);
      norm2 += v[j] * v[j];
    }
    if (norm2 == 0.0) {
      v[0] = 1.0;
      norm2 = 1.0;
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (double& t : v) t *= inv;
    pts.push_back(std::move(v));
  }
  return pts;
}

std::vector<double> random_direction(int dim, Rng& rng) {
  std::vector<double> v(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      v[i] = rng.normal();
      norm2 += v[i] * v[i];
    }
  } while (norm2 == 0.0);
  double inv = 1.0 / std::sqrt(norm2);
  for (double& t : v) t *= inv;
  return v;
}

std::vector<double> sample_phase_point(int dim, Rng& rng, double r_max, double r_min) {
  std::vector<double> v = random_direction(dim, rng);
  double r = (rng.uniform01() < 0.1) ? rng.uniform(0.0, 1.0) : rng.log_uniform(r_min, r_max);
  for (double& t : v) t *= r;
  return v;
}

}  // namespace anhosc
