// Symbol class membership against Lambda(x,xi) = (1+|x|^2k+|xi|^2l)^(1/2):
// seminorm tables over dyadic radial shells with a plateau criterion, and
// least-squares order estimation along lambda_g.
#pragma once

#include <vector>

#include "anhosc/symbol_expr.hpp"

namespace anhosc {

struct ShellGrid {
  double r0 = 1.0;        // innermost shell is [r0, 2 r0]
  int num_shells = 10;    // dyadic shells
  int dirs_per_shell = 64;
  int radii_per_shell = 4;
};

struct SeminormEntry {
  MultiIndex beta;        // x-derivatives
  MultiIndex alpha;       // xi-derivatives
  double sup_raw = 0.0;   // sup over the grid of |d^beta_x d^alpha_xi a| / Lambda^exp
  double sup_normalized = 0.0;  // sup_raw / normalizer
  double last_shell_ratio = 1.0;
  bool plateau_ok = true;
};

struct SigmaMembershipReport {
  bool bounded = false;
  double m = 0.0;
  int k = 1, l = 1;
  int max_order = 0;
  double normalizer = 1.0;
  std::vector<SeminormEntry> table;
  std::string to_json() const;
};

// Plateau criterion: the running shell sup may grow by at most 5% across
// each of the two outermost shells, else the ratio is deemed unbounded.
SigmaMembershipReport sigma_membership(const SymbolExpr& a, int k, int l, double m,
                                       int max_order = 3, ShellGrid grid = {},
                                       double normalizer = 1.0);

// Least-squares slope of log sup_shell |a| against log lambda_g over dyadic
// shells (lambda_g evaluated at the per-shell argmax).  Throws on a
// degenerate fit (fewer than 3 usable shells).
double estimate_order(const SymbolExpr& a, int k, int l, ShellGrid shells = {});

// Decay exponent of sup_shell |a| against log r; used by integrability and
// quantization gates.
double shell_decay_exponent(const SymbolExpr& a, ShellGrid shells = {});

}  // namespace anhosc
