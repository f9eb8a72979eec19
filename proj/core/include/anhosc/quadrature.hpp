// Adaptive Gauss-Kronrod quadrature and phase-space integrals of decaying
// symbols over R^n x R^n, with a certified shell-decay integrability gate
// and two independent decompositions (tensor-cartesian and polar).
#pragma once

#include <functional>
#include <string>

#include "anhosc/oscillator.hpp"
#include "anhosc/symbol_class.hpp"
#include "anhosc/symbol_expr.hpp"

namespace anhosc {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evals = 0;
};

// Adaptive GK15 with panel bisection until the local error bound is met.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

enum class QuadScheme { kCartesian, kPolar };

struct IntegrabilityCheck {
  bool integrable = false;
  double decay_exponent = 0.0;  // sup-shell slope; needs < -2n
};
IntegrabilityCheck check_integrability(const SymbolExpr& a);

// Integral of a over R^(2n); throws std::runtime_error if the
// integrability gate fails.  Cartesian nests adaptive 1D passes over
// dyadic panels; polar (n = 1 only) integrates angle x radius.  The error
// estimate comes from a refinement pass at tol/10.
QuadResult phase_space_integral(const SymbolExpr& a, QuadScheme scheme = QuadScheme::kCartesian,
                                double tol = 1e-8);

struct WeightIntegrability {
  bool analytic = false;       // mu > n / r, strict
  bool numeric_attempted = false;
  bool numeric_finite = false;
  double integral = 0.0;
  std::string to_json() const;
};
// lambda_g^(-mu) in L^r: analytic verdict with a numerical confirmation by
// quadrature of lambda_g^(-mu r) when the integrand is within reach of the
// generic integrability gate.
WeightIntegrability weight_integrability(const OscillatorSpec& spec, double mu, double r);

}  // namespace anhosc
