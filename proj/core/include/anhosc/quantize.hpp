// Grid discretization of the t-quantizations a_t(x,D) for 1D symbols with
// the 2*pi-exponent convention, operator traces, singular values, and the
// exactly terminating Kohn-Nirenberg composition for polynomial symbols.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <vector>

#include "anhosc/symbol_expr.hpp"

namespace anhosc {

struct PhaseGrid {
  double Lx = 12.0, Lxi = 12.0;
  int Mx = 384, Mxi = 384;

  double dx() const { return 2.0 * Lx / Mx; }
  double dxi() const { return 2.0 * Lxi / Mxi; }
  // cell-centered symmetric grids
  std::vector<double> x_points() const;
  std::vector<double> xi_points() const;
  PhaseGrid refined() const { return {2.0 * Lx, 2.0 * Lxi, 2 * Mx, 2 * Mxi}; }
};

struct QuantizedOperator {
  Eigen::MatrixXcd matrix;  // K * dx, acting on l2 of the x grid
  double t = 0.5;
  PhaseGrid grid;
  std::uint64_t symbol_hash = 0;
  double xi_decay_exponent = 0.0;
  double xi_tail_estimate = 0.0;  // relative symbol mass beyond Lxi
};

// Kernel K(x_i, y_j) = sum_m a(t x_i + (1-t) y_j, xi_m) e^{2 pi i (x_i -
// y_j) xi_m} dxi, stored as K * dx.  The decay gate rejects symbols whose
// xi-direction decay exponent is above -1.5 (a constant symbol has no
// kernel on a truncated grid); the truncation tail is recorded.
QuantizedOperator quantize(const SymbolExpr& a, double t, const PhaseGrid& grid = {});
// Polynomial symbols (no decay gate): used by the composition check.
QuantizedOperator quantize(const CPolynomial& a_joint, double t, const PhaseGrid& grid = {});

std::complex<double> op_trace(const QuantizedOperator& Q);
std::vector<double> singular_values(const QuantizedOperator& Q);

// c = sum_alpha (2 pi i)^(-|alpha|) / alpha! d_xi^alpha a d_x^alpha b for
// a = a(xi), b = b(x); the expansion terminates at min(deg a, deg b).
CPolynomial kn_compose_exact(const Polynomial& a_xi, const Polynomial& b_x);

struct ComposeCheck {
  double rel_error = 0.0;    // windowed operator-norm relative error
  double denom_norm = 0.0;   // max ||Q_c u|| over the window family
  int window_vectors = 0;
  double window_radius = 0.0;
};
// Compares quantize(a)quantize(b) with quantize(kn_compose_exact(a,b)) at
// the Kohn-Nirenberg point (t = 1) on smooth compactly supported windows.
ComposeCheck compose_matrix_check(const Polynomial& a_xi, const Polynomial& b_x,
                                  const PhaseGrid& grid);

// flat binary layout (row-major, binary64 interleaved re/im) + text header
void export_operator(std::ostream& data, std::ostream& header, const QuantizedOperator& Q);
// (j, s_j) rows for external plotting
void write_sv_csv(std::ostream& os, std::span<const double> sv_descending);

}  // namespace anhosc
