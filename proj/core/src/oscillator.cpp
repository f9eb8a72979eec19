#include "anhosc/oscillator.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace anhosc {

namespace {

Polynomial embed(const Polynomial& part, int n, bool xi_slot) {
  Polynomial out(2 * n);
  for (const auto& [alpha, c] : part.terms()) {
    MultiIndex beta(2 * n, 0);
    for (int i = 0; i < n; ++i) beta[(xi_slot ? n : 0) + i] = alpha[i];
    out.add_term(std::move(beta), c);
  }
  return out;
}

Polynomial norm_power(int n, int k) {
  // |x|^2k = (x1^2 + ... + xn^2)^k
  Polynomial r2(n);
  for (int i = 0; i < n; ++i) {
    MultiIndex a(n, 0);
    a[i] = 2;
    r2.add_term(std::move(a), 1.0);
  }
  Polynomial out = Polynomial::constant(n, 1.0);
  for (int rep = 0; rep < k; ++rep) out = out * r2;
  return out;
}

}  // namespace

OscillatorSpec::OscillatorSpec(int n, int k, int l, Polynomial p, Polynomial q, double p0,
                               double q0)
    : n_(n), k_(k), l_(l), p_(std::move(p)), q_(std::move(q)), p0_(p0), q0_(q0),
      weight_(2 * n) {
  weight_ = embed(p_, n_, false) + embed(q_, n_, true);
  weight_.add_term(MultiIndex(2 * n_, 0), p0_ + q0_);
}

OscillatorSpec OscillatorSpec::make(int n, int k, int l, Polynomial p, Polynomial q,
                                    double p0, double q0) {
  if (n < 1 || n > 3) throw ValidationError("dimension n must be in 1..3");
  if (k < 1 || l < 1) throw ValidationError("k and l must be integers >= 1");
  if (p.dim() != n || q.dim() != n) throw ValidationError("p and q must live in n variables");
  if (!(p0 > 0.0) || !(q0 > 0.0)) throw ValidationError("p0 and q0 must be positive");

  P2kDecision dp;
  try {
    dp = is_in_P2k(p, k);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("p: ") + e.what());
  }
  if (!dp.member)
    throw ValidationError("p is not in P_2k (leading form min on sphere = " +
                          std::to_string(dp.min_on_sphere) + ")");
  P2kDecision dq;
  try {
    dq = is_in_P2k(q, l);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("q: ") + e.what());
  }
  if (!dq.member)
    throw ValidationError("q is not in P_2l (leading form min on sphere = " +
                          std::to_string(dq.min_on_sphere) + ")");

  Polynomial p_shift = p;
  p_shift.add_term(MultiIndex(n, 0), p0);
  const PositivityCertificate cp = is_strictly_positive(p_shift);
  if (!cp.certified) throw ValidationError("p + p0 not certified strictly positive");
  Polynomial q_shift = q;
  q_shift.add_term(MultiIndex(n, 0), q0);
  const PositivityCertificate cq = is_strictly_positive(q_shift);
  if (!cq.certified) throw ValidationError("q + q0 not certified strictly positive");

  // uncertainty normalization: witnessed inf W = inf(p+p0) + inf(q+q0) >= 1
  if (cp.witness_min + cq.witness_min < 1.0 - 1e-9)
    throw ValidationError("p0 + q0 too small: witnessed inf W = " +
                          std::to_string(cp.witness_min + cq.witness_min) + " < 1");

  return OscillatorSpec(n, k, l, std::move(p), std::move(q), p0, q0);
}

OscillatorSpec OscillatorSpec::prototype(int n, int k, int l) {
  return make(n, k, l, norm_power(n, k), norm_power(n, l), 0.5, 0.5);
}

OscillatorSpec OscillatorSpec::make_unchecked(int n, int k, int l, Polynomial p,
                                              Polynomial q, double p0, double q0) {
  return OscillatorSpec(n, k, l, std::move(p), std::move(q), p0, q0);
}

SymbolExpr OscillatorSpec::lambda_g_expr(double power) const {
  return SymbolExpr::pow(weight_, n_, lambda_exponent() * power);
}

std::uint64_t OscillatorSpec::hash() const {
  const std::string s = describe();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string OscillatorSpec::describe() const {
  std::ostringstream os;
  char buf[64];
  os << "n=" << n_ << ";k=" << k_ << ";l=" << l_;
  os << ";p=" << print_polynomial(p_, n_, true);
  os << ";q=" << print_polynomial(q_, 0, true);
  std::snprintf(buf, sizeof buf, ";p0=%.17g;q0=%.17g", p0_, q0_);
  os << buf;
  return os.str();
}

}  // namespace anhosc
