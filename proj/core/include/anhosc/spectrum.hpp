// Hermite-Galerkin discretization of T = q(D) + p(x) with buffered exact
// assembly, the finite-difference box oracle, Sobolev norms, and spectrum
// serialization.
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "anhosc/oscillator.hpp"

namespace anhosc {

// Ladder-operator realizations on the first `size` Hermite functions:
// X tridiagonal with X[j,j+1] = sqrt((j+1)/2); momentum_matrix returns the
// imaginary-free representation, the real antisymmetric A with P = iA, so
// even powers of P stay real symmetric: P^2m = (-A^2)^m.
Eigen::MatrixXd position_matrix(int size);
Eigen::MatrixXd momentum_matrix(int size);

struct GalerkinMatrix {
  Eigen::MatrixXd matrix;  // dim N^n, exact matrix elements of T
  int n = 1;
  int N = 0;       // per-axis basis count
  int buffer = 0;  // construction head-room, >= max(deg p, deg q)
  std::uint64_t spec_hash = 0;
};

// Exact in the retained block: per-axis operators are built at size
// N+buffer and truncated only after all products are formed.  Every q
// monomial must have even total degree (odd momentum powers leave the real
// symmetric representation).  Guard: N^n <= 20000.
GalerkinMatrix assemble(const OscillatorSpec& spec, int N);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  int basis_size = 0;               // per-axis N (hermite) or grid M (fd)
  std::string method;               // "hermite" | "fd"
  int converged_count = 0;          // leading eigenvalues stable under refinement
  double tol_rel = 1e-9;
  std::optional<OscillatorSpec> spec;
  // fd diagnostics
  double box_halfwidth = 0.0;
  double box_sensitivity = 0.0;  // ground-state shift under a 20% smaller box

  int k() const { return spec ? spec->k() : 1; }
  int l() const { return spec ? spec->l() : 1; }
  int n() const { return spec ? spec->n() : 1; }
};

// Rayleigh-Ritz spectrum of the N^n block; converged_count counts the
// leading eigenvalues that move less than tol_rel (relative) from N to
// N+dN.  Separable specs (every monomial single-variable) combine per-axis
// 1D spectra instead of assembling the tensor matrix.
Spectrum spectrum(const OscillatorSpec& spec, int N, int dN = 32, double tol_rel = 1e-9);

// Independent finite-difference oracle on a Dirichlet box [-L, L]:
// (2l)-th order centered differences realized as the l-th power of the
// second-difference matrix, Richardson-extrapolated over (M, 2M+1).
// Requires n = 1 and monomial q = c xi^(2l).
Spectrum fd_spectrum(const OscillatorSpec& spec, double L, int M, int nev = 32);

// ||(A + 1)^(m/2) u|| for the prototype A with p = |x|^2k, q = |xi|^2l,
// computed spectrally from the Galerkin eigenpairs at basis size N =
// dim(u)^(1/n).  Throws if u carries more than `leak_tol` relative mass
// outside the converged subspace.
double sobolev_norm(const OscillatorSpec& spec, std::span<const double> u, double m,
                    double leak_tol = 1e-8);

// CSV: header block (# key=value) with spec hash, N, method, tolerances,
// then rows (j, lambda, converged).
void write_spectrum_csv(std::ostream& os, const Spectrum& s);

}  // namespace anhosc
