#include <doctest.h>

#include <cmath>
#include <sstream>

#include "anhosc/linalg.hpp"
#include "anhosc/quadrature.hpp"
#include "anhosc/quantize.hpp"
#include "anhosc/specfn.hpp"

using namespace anhosc;

namespace {

SymbolExpr sym_w11(double e) {
  Polynomial w(2);
  w.add_term({0, 0}, 1.0);
  w.add_term({2, 0}, 1.0);
  w.add_term({0, 2}, 1.0);
  return SymbolExpr::pow(w, 1, e);
}

SymbolExpr sym_w21(double e) {
  Polynomial w(2);
  w.add_term({0, 0}, 1.0);
  w.add_term({4, 0}, 1.0);
  w.add_term({0, 2}, 1.0);
  return SymbolExpr::pow(w, 1, e);
}

const PhaseGrid kSmallGrid{12.0, 12.0, 192, 192};

}  // namespace

TEST_CASE("phase grid geometry") {
  const PhaseGrid g;
  CHECK(g.dx() * g.dxi() * g.Mx * g.Mxi == doctest::Approx(4.0 * g.Lx * g.Lxi));
  const auto x = g.x_points();
  double sum = 0.0;
  for (double v : x) sum += v;
  CHECK(std::abs(sum) < 1e-10);  // symmetric about 0
  const PhaseGrid r = g.refined();
  CHECK(r.Mx == 2 * g.Mx);
  CHECK(r.Lx == 2.0 * g.Lx);
}

TEST_CASE("weyl quantization of a real symbol is hermitian") {
  const QuantizedOperator Q = quantize(sym_w11(-2.0), 0.5, kSmallGrid);
  const double scale = Q.matrix.cwiseAbs().maxCoeff();
  CHECK((Q.matrix - Q.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  // hermitian operator: real spectrum
  const auto ev = complex_eigenvalues(Q.matrix);
  for (const auto& l : ev) CHECK(std::abs(l.imag()) < 1e-9);
}

TEST_CASE("non-decaying symbols are rejected") {
  CHECK_THROWS_AS(quantize(SymbolExpr::constant(1, 1.0), 0.5, kSmallGrid),
                  std::runtime_error);
}

TEST_CASE("trace against the phase-space integral") {
  const SymbolExpr a = sym_w11(-2.0);
  const QuadResult integral = phase_space_integral(a, QuadScheme::kCartesian, 1e-8);
  REQUIRE(integral.value == doctest::Approx(M_PI).epsilon(1e-6));
  for (double t : {0.0, 0.5}) {
    const QuantizedOperator Q = quantize(a, t, kSmallGrid);
    const std::complex<double> tr = op_trace(Q);
    CHECK(std::abs(tr.imag()) < 1e-9);
    CHECK(std::abs(tr.real() - M_PI) / M_PI < 0.01);
  }
  // the diagonal kernel is t-independent, so traces agree exactly
  const std::complex<double> t0 = op_trace(quantize(a, 0.0, kSmallGrid));
  const std::complex<double> t12 = op_trace(quantize(a, 0.5, kSmallGrid));
  CHECK(std::abs(t0 - t12) < 1e-10);
}

TEST_CASE("trace is linear in the symbol") {
  const SymbolExpr a = sym_w11(-2.0);
  const SymbolExpr b = sym_w21(-2.0);
  const SymbolExpr ab = SymbolExpr::sum({a, b});
  const std::complex<double> tr_sum = op_trace(quantize(ab, 0.5, kSmallGrid));
  const std::complex<double> tr_a = op_trace(quantize(a, 0.5, kSmallGrid));
  const std::complex<double> tr_b = op_trace(quantize(b, 0.5, kSmallGrid));
  CHECK(std::abs(tr_sum - tr_a - tr_b) < 1e-10 * std::abs(tr_sum));
}

TEST_CASE("grid refinement tightens the trace toward the integral") {
  const SymbolExpr a = sym_w11(-2.0);
  const QuantizedOperator Q = quantize(a, 0.5, kSmallGrid);
  const double base = op_trace(Q).real();
  const double err_est = std::abs(base - M_PI);
  const double refined = op_trace(quantize(a, 0.5, kSmallGrid.refined())).real();
  CHECK(std::abs(refined - base) <= 1.5 * err_est);
  CHECK(std::abs(refined - M_PI) < std::abs(base - M_PI));
}

TEST_CASE("singular values of hermitian and explicit fixtures") {
  const QuantizedOperator Q = quantize(sym_w11(-2.0), 0.5, kSmallGrid);
  const auto sv = singular_values(Q);
  const auto ev = complex_eigenvalues(Q.matrix);
  std::vector<double> abs_ev(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) abs_ev[i] = std::abs(ev[i]);
  std::sort(abs_ev.begin(), abs_ev.end(), std::greater<double>());
  for (std::size_t i = 0; i < 20; ++i)
    CHECK(sv[i] == doctest::Approx(abs_ev[i]).epsilon(1e-8));

  QuantizedOperator diag;
  diag.matrix = Eigen::MatrixXcd::Zero(2, 2);
  diag.matrix(0, 0) = 3.0;
  diag.matrix(1, 1) = -4.0;
  const auto sd = singular_values(diag);
  CHECK(sd[0] == doctest::Approx(4.0));
  CHECK(sd[1] == doctest::Approx(3.0));
}

TEST_CASE("weyl inequality for the quantized non-normal fixture") {
  const QuantizedOperator Q = quantize(sym_w21(-2.0), 0.0, kSmallGrid);
  const auto sv = singular_values(Q);
  const auto ev = complex_eigenvalues(Q.matrix);
  for (double p : {0.5, 1.0, 2.0}) {
    double lam = 0.0, s = 0.0;
    for (const auto& l : ev) lam += std::pow(std::abs(l), p);
    for (double v : sv) s += std::pow(v, p);
    CHECK(lam <= s + 1e-10 * std::max(1.0, s));
  }
}

TEST_CASE("singular value decay of the quantized quartic-type symbol") {
  const QuantizedOperator Q = quantize(sym_w21(-2.0), 0.5, kSmallGrid);
  const auto sv = singular_values(Q);
  for (double r : {0.5, 1.0, 2.0}) {
    const SvDecayFit fit = sv_decay_fit(sv, r);
    CHECK(fit.passes_small_o);
    CHECK(fit.tail_decreasing);
    CHECK(1.0 / r < fit.exponent - 0.05);
  }
}

TEST_CASE("kn composition terminates with the exact coefficients") {
  const Polynomial xi2 = Polynomial::monomial(1, {2}, 1.0);
  const Polynomial x2 = Polynomial::monomial(1, {2}, 1.0);
  const CPolynomial c = kn_compose_exact(xi2, x2);
  // x^2 xi^2 + (4 / 2 pi i) x xi + 2 (2 pi i)^-2
  REQUIRE(c.terms().size() == 3);
  const std::complex<double> tpi(0.0, 2.0 * M_PI);
  CHECK(std::abs(c.terms().at({2, 2}) - std::complex<double>(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(c.terms().at({1, 1}) - 4.0 / tpi) < 1e-15);
  CHECK(std::abs(c.terms().at({0, 0}) - 2.0 / (tpi * tpi)) < 1e-15);

  const CPolynomial c1 = kn_compose_exact(Polynomial::monomial(1, {1}, 1.0),
                                          Polynomial::monomial(1, {1}, 1.0));
  REQUIRE(c1.terms().size() == 2);
  CHECK(std::abs(c1.terms().at({1, 1}) - std::complex<double>(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(c1.terms().at({0, 0}) - 1.0 / tpi) < 1e-15);
}

TEST_CASE("composition matrix oracle at the kn quantization") {
  const PhaseGrid grid{8.0, 8.0, 256, 512};
  const ComposeCheck chk = compose_matrix_check(Polynomial::monomial(1, {2}, 1.0),
                                                Polynomial::monomial(1, {2}, 1.0), grid);
  CHECK(chk.rel_error < 1e-3);
  CHECK(chk.window_vectors >= 4);
}

TEST_CASE("operator export layout") {
  QuantizedOperator Q;
  Q.matrix = Eigen::MatrixXcd::Zero(3, 3);
  Q.matrix(0, 1) = std::complex<double>(1.5, -2.5);
  Q.grid = kSmallGrid;
  Q.t = 0.5;
  std::ostringstream data(std::ios::binary), header;
  export_operator(data, header, Q);
  CHECK(data.str().size() == 3 * 3 * 2 * sizeof(double));
  CHECK(header.str().find("rows=3") != std::string::npos);
  CHECK(header.str().find("layout=row-major-complex128-interleaved") != std::string::npos);
  // re/im of entry (0,1) sit at the second complex slot
  const std::string bytes = data.str();
  const double* vals = reinterpret_cast<const double*>(bytes.data());
  CHECK(vals[2] == 1.5);
  CHECK(vals[3] == -2.5);
}
