// OscillatorSpec: the validated pair (p, q) with integers k, l >= 1 that
// defines T = q(D) + p(x) and the split phase-space metric with
// denominators W^(1/k), W^(1/l), W = p0 + q0 + p(x) + q(xi).
#pragma once

#include <cstdint>
#include <string>

#include "anhosc/polynomial.hpp"
#include "anhosc/positivity.hpp"
#include "anhosc/symbol_expr.hpp"

namespace anhosc {

// Contract violations surface as ValidationError; the CLI maps these to
// exit code 2 (numeric failures are everything else, exit 3).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OscillatorSpec {
 public:
  // Validated construction: requires p in P_2k, q in P_2l, certified
  // p(x)+p0 > 0 and q(xi)+q0 > 0, and certified inf W >= 1 so the
  // uncertainty normalization lambda_g >= 1 holds.
  static OscillatorSpec make(int n, int k, int l, Polynomial p, Polynomial q, double p0,
                             double q0);
  // Prototype oscillator: p = |x|^2k, q = |xi|^2l, p0 = q0 = 1/2.
  static OscillatorSpec prototype(int n, int k, int l);
  // No validation; for deliberately broken axiom-check fixtures only.
  static OscillatorSpec make_unchecked(int n, int k, int l, Polynomial p, Polynomial q,
                                       double p0, double q0);

  int n() const { return n_; }
  int k() const { return k_; }
  int l() const { return l_; }
  const Polynomial& p() const { return p_; }
  const Polynomial& q() const { return q_; }
  double p0() const { return p0_; }
  double q0() const { return q0_; }

  // W(X) = p0 + q0 + p(x) + q(xi) over the joint variables.
  const Polynomial& weight_poly() const { return weight_; }
  double weight_at(std::span<const double> X) const { return weight_.eval(X); }
  SymbolExpr weight_expr() const { return SymbolExpr::poly(weight_, n_); }
  // lambda_g = W^((k+l)/(2kl)) as a symbol expression
  SymbolExpr lambda_g_expr(double power = 1.0) const;
  double lambda_exponent() const {
    return static_cast<double>(k_ + l_) / (2.0 * k_ * l_);
  }
  // Weyl-law growth exponent: lambda_j ~ j^rho with rho = 2kl/(n(k+l)).
  double growth_exponent() const {
    return 2.0 * k_ * l_ / (static_cast<double>(n_) * (k_ + l_));
  }

  std::uint64_t hash() const;
  std::string describe() const;

 private:
  OscillatorSpec(int n, int k, int l, Polynomial p, Polynomial q, double p0, double q0);

  int n_, k_, l_;
  Polynomial p_, q_;
  double p0_, q0_;
  Polynomial weight_;
};

}  // namespace anhosc
