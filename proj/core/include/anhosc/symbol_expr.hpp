// Phase-space symbol expressions: polynomials over the joint variables
// (x, xi), closed under sums, products and real powers of certified
// strictly positive polynomial bases.  Differentiation is exact and stays
// inside the class (sum/product/chain rules).
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anhosc/polynomial.hpp"
#include "anhosc/positivity.hpp"

namespace anhosc {

inline constexpr int kMaxDerivativeOrder = 8;

class SymbolExpr {
 public:
  enum class Kind { kPoly, kSum, kProduct, kPower };

  // Poly node over the joint variables; n = spatial dimension, so the
  // polynomial lives in 2n variables (x1..xn, xi1..xin).
  static SymbolExpr poly(Polynomial joint, int n);
  static SymbolExpr constant(int n, double c);
  static SymbolExpr sum(std::vector<SymbolExpr> parts);
  static SymbolExpr product(std::vector<SymbolExpr> parts);
  // Certifies the base via is_strictly_positive; throws std::domain_error
  // if certification fails.  A precomputed certificate can be supplied.
  static SymbolExpr pow(Polynomial base_joint, int n, double exponent,
                        std::optional<PositivityCertificate> cert = std::nullopt);

  // Builds p(x) + q(xi) + shift embedded in the joint variables.
  static SymbolExpr from_parts(const Polynomial& p_x, const Polynomial& q_xi, int n,
                               double shift = 0.0);

  int n() const { return n_; }
  int joint_dim() const { return 2 * n_; }
  Kind kind() const;

  double eval(std::span<const double> X) const;
  SymbolExpr partial(int var) const;  // var in [0, 2n)

  // value of d^beta_x d^alpha_xi a at X; |alpha|+|beta| <= max_order
  double deriv_eval(std::span<const double> X, const MultiIndex& beta_x,
                    const MultiIndex& alpha_xi, int max_order = kMaxDerivativeOrder) const;

  std::string describe() const;  // canonical-ish form for hashing/manifests
  std::uint64_t hash() const;

 private:
  struct Node;
  SymbolExpr(std::shared_ptr<const Node> node, int n) : node_(std::move(node)), n_(n) {}

  std::shared_ptr<const Node> node_;
  int n_ = 1;
};

}  // namespace anhosc
