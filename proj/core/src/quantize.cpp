#include "anhosc/quantize.hpp"

#include <cmath>
#include <functional>
#include <ostream>

#include "anhosc/linalg.hpp"
#include "anhosc/report.hpp"

namespace anhosc {

std::vector<double> PhaseGrid::x_points() const {
  std::vector<double> x(static_cast<std::size_t>(Mx));
  for (int i = 0; i < Mx; ++i) x[static_cast<std::size_t>(i)] = -Lx + (i + 0.5) * dx();
  return x;
}

std::vector<double> PhaseGrid::xi_points() const {
  std::vector<double> xi(static_cast<std::size_t>(Mxi));
  for (int m = 0; m < Mxi; ++m) xi[static_cast<std::size_t>(m)] = -Lxi + (m + 0.5) * dxi();
  return xi;
}

namespace {

using Evaluator = std::function<std::complex<double>(double, double)>;

CPolynomial embed_part(const Polynomial& part, bool xi_slot) {
  const int n = part.dim();
  CPolynomial out(2 * n);
  for (const auto& [alpha, c] : part.terms()) {
    MultiIndex beta(2 * n, 0);
    for (int i = 0; i < n; ++i) beta[(xi_slot ? n : 0) + i] = alpha[i];
    out.add_term(std::move(beta), std::complex<double>(c, 0.0));
  }
  return out;
}

QuantizedOperator build_kernel(const Evaluator& a, double t, const PhaseGrid& grid,
                               std::uint64_t hash) {
  const auto x = grid.x_points();
  const auto xi = grid.xi_points();
  const int M = grid.Mx, Mxi = grid.Mxi;
  const double dxi = grid.dxi(), dx = grid.dx();

  // symbol table over the first-argument values the kernel needs; for the
  // tabulated t the argument u = t x_i + (1-t) x_j runs over x_0 + s p dx
  const bool tabulated = (t == 0.0 || t == 1.0 || t == 0.5);
  const double step = (t == 0.5) ? 0.5 * dx : dx;
  auto arg_index = [&](int i, int j) -> int {
    if (t == 0.0) return j;
    if (t == 1.0) return i;
    return i + j;
  };
  Eigen::MatrixXcd S;
  if (tabulated) {
    const int rows = (t == 0.5) ? 2 * M - 1 : M;
    S.resize(rows, Mxi);
    for (int p = 0; p < rows; ++p) {
      const double u = x[0] + p * step;
      for (int m = 0; m < Mxi; ++m) S(p, m) = a(u, xi[static_cast<std::size_t>(m)]);
    }
  }

  // oscillation table over pair separations d = i - j
  Eigen::MatrixXcd E(2 * M - 1, Mxi);
  for (int d = -(M - 1); d <= M - 1; ++d) {
    const double sep = d * dx;
    for (int m = 0; m < Mxi; ++m) {
      const double ph = 2.0 * M_PI * sep * xi[static_cast<std::size_t>(m)];
      E(d + M - 1, m) = std::complex<double>(std::cos(ph), std::sin(ph));
    }
  }

  QuantizedOperator Q;
  Q.matrix.resize(M, M);
  const std::complex<double> weight(dxi * dx, 0.0);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      std::complex<double> acc;
      if (tabulated) {
        acc = S.row(arg_index(i, j)).cwiseProduct(E.row(i - j + M - 1)).sum();
      } else {
        const double u =
            t * x[static_cast<std::size_t>(i)] + (1.0 - t) * x[static_cast<std::size_t>(j)];
        acc = std::complex<double>(0.0, 0.0);
        for (int m = 0; m < Mxi; ++m)
          acc += a(u, xi[static_cast<std::size_t>(m)]) * E(i - j + M - 1, m);
      }
      Q.matrix(i, j) = acc * weight;
    }
  }
  Q.t = t;
  Q.grid = grid;
  Q.symbol_hash = hash;
  return Q;
}

}  // namespace

QuantizedOperator quantize(const SymbolExpr& a, double t, const PhaseGrid& grid) {
  if (a.n() != 1) throw std::invalid_argument("quantize: 1D symbols only");

  // xi-direction decay gate: sup over an x strip at dyadic xi radii
  std::vector<double> lr, ls;
  double scale = 0.0;
  for (int j = 0; j <= 12; ++j) {
    const double xiv = std::pow(2.0, j);
    double sup = 0.0;
    for (int s = 0; s < 9; ++s) {
      const double xv = -grid.Lx + s * grid.Lx / 4.0;
      for (double sgn : {-1.0, 1.0}) {
        const double X[2] = {xv, sgn * xiv};
        sup = std::max(sup, std::abs(a.eval(std::span<const double>(X, 2))));
      }
    }
    scale = std::max(scale, sup);
    if (sup > 0.0) {
      lr.push_back(std::log(xiv));
      ls.push_back(std::log(sup));
    }
  }
  double slope = 0.0;
  {
    const std::size_t m = lr.size();
    if (m < 3) throw std::runtime_error("quantize: xi decay not measurable");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t lo = m / 2;
    for (std::size_t i = lo; i < m; ++i) {
      sx += lr[i];
      sy += ls[i];
      sxx += lr[i] * lr[i];
      sxy += lr[i] * ls[i];
    }
    const double cnt = static_cast<double>(m - lo);
    slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  }
  if (slope > -1.5)
    throw std::runtime_error("quantize: symbol does not decay in xi (exponent " +
                             format_double(slope) + " > -1.5)");

  Evaluator ev = [&a](double xv, double xiv) {
    const double X[2] = {xv, xiv};
    return std::complex<double>(a.eval(std::span<const double>(X, 2)), 0.0);
  };
  QuantizedOperator Q = build_kernel(ev, t, grid, a.hash());
  Q.xi_decay_exponent = slope;
  // relative tail of the truncated xi integral, extrapolating the fitted
  // power decay from the outermost measured shell to Lxi
  const double r_last = std::exp(lr.back());
  const double sup_at_L = std::exp(ls.back()) * std::pow(grid.Lxi / r_last, slope);
  Q.xi_tail_estimate =
      sup_at_L * grid.Lxi / ((-slope - 1.0) * std::max(scale, 1e-300));
  return Q;
}

QuantizedOperator quantize(const CPolynomial& a_joint, double t, const PhaseGrid& grid) {
  if (a_joint.dim() != 2) throw std::invalid_argument("quantize: 1D symbols only");
  Evaluator ev = [&a_joint](double xv, double xiv) {
    const double X[2] = {xv, xiv};
    return a_joint.eval(std::span<const double>(X, 2));
  };
  const std::uint64_t hash = fnv1a("cpoly");
  return build_kernel(ev, t, grid, hash);
}

std::complex<double> op_trace(const QuantizedOperator& Q) { return Q.matrix.trace(); }

std::vector<double> singular_values(const QuantizedOperator& Q) {
  return singular_values_of(Q.matrix);
}

CPolynomial kn_compose_exact(const Polynomial& a_xi, const Polynomial& b_x) {
  if (a_xi.dim() != b_x.dim())
    throw std::invalid_argument("kn_compose_exact: dimension mismatch");
  const int n = a_xi.dim();
  const std::complex<double> two_pi_i(0.0, 2.0 * M_PI);

  const int max_order = std::min(a_xi.degree(), b_x.degree());
  CPolynomial c(2 * n);
  std::vector<MultiIndex> alphas;
  {
    std::vector<MultiIndex> cur{MultiIndex(n, 0)};
    alphas.push_back(MultiIndex(n, 0));
    for (int order = 1; order <= max_order; ++order) {
      std::vector<MultiIndex> next;
      for (const auto& mi : cur)
        for (int i = 0; i < n; ++i) {
          MultiIndex m2 = mi;
          m2[i] += 1;
          next.push_back(std::move(m2));
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (const auto& mi : next) alphas.push_back(mi);
      cur = std::move(next);
    }
  }

  for (const auto& alpha : alphas) {
    Polynomial da = a_xi, db = b_x;
    double fact = 1.0;
    for (int i = 0; i < n; ++i) {
      da = da.partial(i, alpha[i]);
      db = db.partial(i, alpha[i]);
      for (int v = 2; v <= alpha[i]; ++v) fact *= v;
    }
    if (da.is_zero() || db.is_zero()) continue;
    const int order = multi_index_order(alpha);
    std::complex<double> coeff(1.0, 0.0);
    for (int v = 0; v < order; ++v) coeff /= two_pi_i;
    coeff /= fact;
    CPolynomial term = embed_part(da, true) * embed_part(db, false);
    c += term * coeff;
  }
  return c;
}

ComposeCheck compose_matrix_check(const Polynomial& a_xi, const Polynomial& b_x,
                                  const PhaseGrid& grid_in) {
  if (a_xi.dim() != 1 || b_x.dim() != 1)
    throw std::invalid_argument("compose_matrix_check: 1D only");
  const CPolynomial c = kn_compose_exact(a_xi, b_x);

  // polynomial-symbol kernels periodize in x - y with period 1/dxi; keep
  // the wrap beyond twice the box so images stay outside the physical
  // range, and resolve x finely enough for the windowed derivative content
  PhaseGrid grid = grid_in;
  const int min_mxi = static_cast<int>(std::ceil(8.0 * grid.Lx * grid.Lxi));
  grid.Mxi = std::max(grid.Mxi, min_mxi);
  grid.Mx = std::max(grid.Mx, static_cast<int>(std::ceil(32.0 * grid.Lx)));

  const double t_kn = 1.0;  // Kohn-Nirenberg point of the a_t family
  const QuantizedOperator Qa = quantize(embed_part(a_xi, true), t_kn, grid);
  const QuantizedOperator Qb = quantize(embed_part(b_x, false), t_kn, grid);
  const QuantizedOperator Qc = quantize(c, t_kn, grid);

  const Eigen::MatrixXcd lhs = Qa.matrix * Qb.matrix;

  // smooth compactly supported windows: hermite-type profiles cut off by a
  // C^inf bump; a wide transition keeps the windowed bandwidth low
  const auto x = grid.x_points();
  const double R = 0.625 * grid.Lx;
  const double W = 0.1875 * grid.Lx;
  auto window = [&](double xv) -> double {
    const double z = (std::abs(xv) - R) / W;
    if (z <= 0.0) return 1.0;
    if (z >= 1.0) return 0.0;
    const double e1 = std::exp(-1.0 / z);
    const double e2 = std::exp(-1.0 / (1.0 - z));
    return e2 / (e1 + e2);
  };

  ComposeCheck out;
  out.window_radius = R;
  double max_err = 0.0, max_den = 0.0;
  for (int p = 0; p < 4; ++p) {
    Eigen::VectorXcd u(grid.Mx);
    for (int i = 0; i < grid.Mx; ++i) {
      const double xv = x[static_cast<std::size_t>(i)];
      u(i) = std::pow(xv, p) * std::exp(-0.5 * xv * xv) * window(xv);
    }
    const Eigen::VectorXcd d = lhs * u - Qc.matrix * u;
    max_err = std::max(max_err, d.norm());
    max_den = std::max(max_den, (Qc.matrix * u).norm());
    ++out.window_vectors;
  }
  out.denom_norm = max_den;
  out.rel_error = max_err / std::max(max_den, 1e-300);
  return out;
}

void write_sv_csv(std::ostream& os, std::span<const double> sv) {
  os << "j,s\n";
  for (std::size_t j = 0; j < sv.size(); ++j)
    os << j << "," << format_double(sv[j]) << "\n";
}

void export_operator(std::ostream& data, std::ostream& header, const QuantizedOperator& Q) {
  for (Eigen::Index i = 0; i < Q.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < Q.matrix.cols(); ++j) {
      const double re = Q.matrix(i, j).real();
      const double im = Q.matrix(i, j).imag();
      data.write(reinterpret_cast<const char*>(&re), sizeof re);
      data.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  header << "format=anhosc-operator-v1\n";
  header << "layout=row-major-complex128-interleaved\n";
  header << "rows=" << Q.matrix.rows() << "\ncols=" << Q.matrix.cols() << "\n";
  header << "t=" << format_double(Q.t) << "\n";
  header << "Lx=" << format_double(Q.grid.Lx) << "\nLxi=" << format_double(Q.grid.Lxi) << "\n";
  header << "Mx=" << Q.grid.Mx << "\nMxi=" << Q.grid.Mxi << "\n";
  header << "symbol_hash=" << Q.symbol_hash << "\n";
}

}  // namespace anhosc
