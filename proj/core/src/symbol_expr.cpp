#include "anhosc/symbol_expr.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace anhosc {

struct SymbolExpr::Node {
  Kind kind;
  Polynomial poly{1};               // kPoly; also the base of kPower
  double exponent = 1.0;            // kPower
  std::vector<SymbolExpr> children;  // kSum, kProduct
  double base_witness_min = 0.0;    // kPower diagnostics
};

SymbolExpr SymbolExpr::poly(Polynomial joint, int n) {
  if (joint.dim() != 2 * n)
    throw std::invalid_argument("symbol polynomial must live in 2n joint variables");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kPoly;
  node->poly = std::move(joint);
  return SymbolExpr(std::move(node), n);
}

SymbolExpr SymbolExpr::constant(int n, double c) {
  return poly(Polynomial::constant(2 * n, c), n);
}

SymbolExpr SymbolExpr::sum(std::vector<SymbolExpr> parts) {
  if (parts.empty()) throw std::invalid_argument("empty sum");
  const int n = parts.front().n_;
  for (const auto& p : parts)
    if (p.n_ != n) throw std::invalid_argument("sum over mismatched dimensions");
  if (parts.size() == 1) return parts.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::kSum;
  node->children = std::move(parts);
  return SymbolExpr(std::move(node), n);
}

SymbolExpr SymbolExpr::product(std::vector<SymbolExpr> parts) {
  if (parts.empty()) throw std::invalid_argument("empty product");
  const int n = parts.front().n_;
  for (const auto& p : parts)
    if (p.n_ != n) throw std::invalid_argument("product over mismatched dimensions");
  if (parts.size() == 1) return parts.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::kProduct;
  node->children = std::move(parts);
  return SymbolExpr(std::move(node), n);
}

SymbolExpr SymbolExpr::pow(Polynomial base_joint, int n, double exponent,
                           std::optional<PositivityCertificate> cert) {
  if (base_joint.dim() != 2 * n)
    throw std::invalid_argument("power base must live in 2n joint variables");
  if (exponent == 0.0) return constant(n, 1.0);
  if (exponent == 1.0) return poly(std::move(base_joint), n);
  if (!cert) cert = is_strictly_positive(base_joint);
  if (!cert->certified)
    throw std::domain_error("power base not certified strictly positive (" + cert->reason + ")");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kPower;
  node->poly = std::move(base_joint);
  node->exponent = exponent;
  node->base_witness_min = cert->witness_min;
  return SymbolExpr(std::move(node), n);
}

SymbolExpr SymbolExpr::from_parts(const Polynomial& p_x, const Polynomial& q_xi, int n,
                                  double shift) {
  if (p_x.dim() != n || q_xi.dim() != n)
    throw std::invalid_argument("from_parts: p and q must each live in n variables");
  Polynomial joint(2 * n);
  for (const auto& [alpha, c] : p_x.terms()) {
    MultiIndex beta(2 * n, 0);
    for (int i = 0; i < n; ++i) beta[i] = alpha[i];
    joint.add_term(std::move(beta), c);
  }
  for (const auto& [alpha, c] : q_xi.terms()) {
    MultiIndex beta(2 * n, 0);
    for (int i = 0; i < n; ++i) beta[n + i] = alpha[i];
    joint.add_term(std::move(beta), c);
  }
  if (shift != 0.0) joint.add_term(MultiIndex(2 * n, 0), shift);
  return poly(std::move(joint), n);
}

SymbolExpr::Kind SymbolExpr::kind() const { return node_->kind; }

double SymbolExpr::eval(std::span<const double> X) const {
  switch (node_->kind) {
    case Kind::kPoly:
      return node_->poly.eval(X);
    case Kind::kSum: {
      double acc = 0.0;
      for (const auto& c : node_->children) acc += c.eval(X);
      return acc;
    }
    case Kind::kProduct: {
      double acc = 1.0;
      for (const auto& c : node_->children) acc *= c.eval(X);
      return acc;
    }
    case Kind::kPower: {
      const double base = node_->poly.eval(X);
      if (base <= 0.0)
        throw std::domain_error("certified-positive power base evaluated non-positive");
      return std::pow(base, node_->exponent);
    }
  }
  throw std::logic_error("unreachable");
}

SymbolExpr SymbolExpr::partial(int var) const {
  if (var < 0 || var >= 2 * n_) throw std::invalid_argument("derivative variable out of range");
  switch (node_->kind) {
    case Kind::kPoly:
      return poly(node_->poly.partial(var), n_);
    case Kind::kSum: {
      std::vector<SymbolExpr> parts;
      parts.reserve(node_->children.size());
      for (const auto& c : node_->children) {
        SymbolExpr d = c.partial(var);
        if (d.kind() == Kind::kPoly && d.node_->poly.is_zero()) continue;
        parts.push_back(std::move(d));
      }
      if (parts.empty()) return constant(n_, 0.0);
      return sum(std::move(parts));
    }
    case Kind::kProduct: {
      std::vector<SymbolExpr> terms;
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        SymbolExpr d = node_->children[i].partial(var);
        if (d.kind() == Kind::kPoly && d.node_->poly.is_zero()) continue;
        std::vector<SymbolExpr> factors;
        factors.reserve(node_->children.size());
        for (std::size_t j = 0; j < node_->children.size(); ++j)
          factors.push_back(j == i ? d : node_->children[j]);
        terms.push_back(product(std::move(factors)));
      }
      if (terms.empty()) return constant(n_, 0.0);
      return sum(std::move(terms));
    }
    case Kind::kPower: {
      // d (P^r) = r P' P^(r-1); the shifted-exponent node reuses the
      // certificate of the same base
      Polynomial dbase = node_->poly.partial(var);
      if (dbase.is_zero()) return constant(n_, 0.0);
      PositivityCertificate cert;
      cert.certified = true;
      cert.witness_min = node_->base_witness_min;
      cert.reason = "ok";
      SymbolExpr rest = pow(node_->poly, n_, node_->exponent - 1.0, cert);
      SymbolExpr factor = poly(dbase * node_->exponent, n_);
      return product({std::move(factor), std::move(rest)});
    }
  }
  throw std::logic_error("unreachable");
}

double SymbolExpr::deriv_eval(std::span<const double> X, const MultiIndex& beta_x,
                              const MultiIndex& alpha_xi, int max_order) const {
  if (static_cast<int>(beta_x.size()) != n_ || static_cast<int>(alpha_xi.size()) != n_)
    throw std::invalid_argument("deriv_eval: multi-index length != n");
  const int order = multi_index_order(beta_x) + multi_index_order(alpha_xi);
  if (order > max_order)
    throw std::invalid_argument("deriv_eval: derivative order above configured maximum");
  SymbolExpr cur = *this;
  for (int i = 0; i < n_; ++i)
    for (int rep = 0; rep < beta_x[i]; ++rep) cur = cur.partial(i);
  for (int i = 0; i < n_; ++i)
    for (int rep = 0; rep < alpha_xi[i]; ++rep) cur = cur.partial(n_ + i);
  return cur.eval(X);
}

std::string SymbolExpr::describe() const {
  std::ostringstream os;
  switch (node_->kind) {
    case Kind::kPoly:
      os << "(" << print_polynomial(node_->poly, n_) << ")";
      break;
    case Kind::kSum: {
      os << "sum(";
      for (std::size_t i = 0; i < node_->children.size(); ++i)
        os << (i ? ", " : "") << node_->children[i].describe();
      os << ")";
      break;
    }
    case Kind::kProduct: {
      os << "prod(";
      for (std::size_t i = 0; i < node_->children.size(); ++i)
        os << (i ? ", " : "") << node_->children[i].describe();
      os << ")";
      break;
    }
    case Kind::kPower: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.17g", node_->exponent);
      os << "(" << print_polynomial(node_->poly, n_) << ")^" << buf;
      break;
    }
  }
  return os.str();
}

std::uint64_t SymbolExpr::hash() const {
  const std::string s = describe();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace anhosc
