// Dense-by-multi-index multivariate polynomials with exact coefficient
// arithmetic: evaluation, iterated partial derivatives, homogeneous parts.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace anhosc {

using MultiIndex = std::vector<int>;

inline int multi_index_order(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

template <class Scalar>
class PolynomialT {
 public:
  using TermMap = std::map<MultiIndex, Scalar>;

  explicit PolynomialT(int dim = 1) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  }

  static PolynomialT constant(int dim, Scalar c) {
    PolynomialT p(dim);
    p.add_term(MultiIndex(dim, 0), c);
    return p;
  }

  static PolynomialT monomial(int dim, MultiIndex alpha, Scalar c) {
    if (static_cast<int>(alpha.size()) != dim)
      throw std::invalid_argument("monomial multi-index length != dim");
    for (int a : alpha)
      if (a < 0) throw std::invalid_argument("negative exponent");
    PolynomialT p(dim);
    p.add_term(std::move(alpha), c);
    return p;
  }

  static PolynomialT variable(int dim, int index) {
    MultiIndex alpha(dim, 0);
    alpha.at(index) = 1;
    return monomial(dim, std::move(alpha), Scalar(1));
  }

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree() == 0; }
  const TermMap& terms() const { return terms_; }

  int degree() const {
    int d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, multi_index_order(alpha));
    return d;
  }

  Scalar constant_term() const {
    auto it = terms_.find(MultiIndex(dim_, 0));
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(MultiIndex alpha, Scalar c) {
    if (static_cast<int>(alpha.size()) != dim_)
      throw std::invalid_argument("term multi-index length != dim");
    auto [it, inserted] = terms_.emplace(std::move(alpha), c);
    if (!inserted) it->second += c;
    if (it->second == Scalar(0)) terms_.erase(it);
  }

  Scalar eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
      throw std::invalid_argument("evaluation point length != dim");
    Scalar acc(0);
    for (const auto& [alpha, c] : terms_) {
      Scalar t = c;
      for (int i = 0; i < dim_; ++i)
        for (int rep = 0; rep < alpha[i]; ++rep) t *= x[i];
      acc += t;
    }
    return acc;
  }

  // Exact iterated partial derivative: coefficient arithmetic only.
  PolynomialT partial(int direction, int times = 1) const {
    if (direction < 0 || direction >= dim_)
      throw std::invalid_argument("derivative direction out of range");
    if (times < 0) throw std::invalid_argument("negative derivative count");
    PolynomialT out = *this;
    for (int rep = 0; rep < times; ++rep) {
      PolynomialT next(dim_);
      for (const auto& [alpha, c] : out.terms_) {
        if (alpha[direction] == 0) continue;
        MultiIndex beta = alpha;
        beta[direction] -= 1;
        next.add_term(std::move(beta), c * Scalar(alpha[direction]));
      }
      out = std::move(next);
    }
    return out;
  }

  // Homogeneous part of degree exactly d (possibly zero).
  PolynomialT leading_form(int d) const {
    PolynomialT out(dim_);
    for (const auto& [alpha, c] : terms_)
      if (multi_index_order(alpha) == d) out.add_term(alpha, c);
    return out;
  }

  PolynomialT& operator+=(const PolynomialT& rhs) {
    require_same_dim(rhs);
    for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, c);
    return *this;
  }

  PolynomialT& operator-=(const PolynomialT& rhs) {
    require_same_dim(rhs);
    for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, -c);
    return *this;
  }

  PolynomialT& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [alpha, c] : terms_) c *= s;
    return *this;
  }

  friend PolynomialT operator+(PolynomialT a, const PolynomialT& b) { return a += b; }
  friend PolynomialT operator-(PolynomialT a, const PolynomialT& b) { return a -= b; }
  friend PolynomialT operator*(PolynomialT a, Scalar s) { return a *= s; }
  friend PolynomialT operator*(Scalar s, PolynomialT a) { return a *= s; }

  friend PolynomialT operator*(const PolynomialT& a, const PolynomialT& b) {
    a.require_same_dim(b);
    PolynomialT out(a.dim_);
    for (const auto& [alpha, ca] : a.terms_)
      for (const auto& [beta, cb] : b.terms_) {
        MultiIndex gamma(a.dim_);
        for (int i = 0; i < a.dim_; ++i) gamma[i] = alpha[i] + beta[i];
        out.add_term(std::move(gamma), ca * cb);
      }
    return out;
  }

  friend bool operator==(const PolynomialT& a, const PolynomialT& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_dim(const PolynomialT& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  int dim_;
  TermMap terms_;
};

using Polynomial = PolynomialT<double>;
using CPolynomial = PolynomialT<std::complex<double>>;

CPolynomial to_complex(const Polynomial& p);

// Sum of |coefficient| over terms of total degree < d (certificate bookkeeping).
double coeff_abs_sum_below(const Polynomial& p, int d);
// Sum of |coefficient| over all non-constant terms.
double coeff_abs_sum_nonconstant(const Polynomial& p);

// Text format: sum of terms `c * x1^a1 * ... * xn^an`, with variables split
// into `n_x` position variables named x1..xn and the remainder named
// xi1..xim.  Printing round-trips bit-exactly through parse_polynomial for
// binary64 coefficients; hex_floats switches the coefficient format to %a.
std::string print_polynomial(const Polynomial& p, int n_x, bool hex_floats = false);
Polynomial parse_polynomial(const std::string& text, int dim, int n_x);

// FNV-1a over the canonical printed form; used for run manifests.
std::uint64_t polynomial_hash(const Polynomial& p);

}  // namespace anhosc
