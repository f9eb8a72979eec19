// Dense linear algebra used by the spectral pipeline: symmetric/Hermitian
// eigensolvers with contract checks, singular values, Schatten norms and
// eigenvalues of general complex matrices.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace anhosc {

struct EighResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
};

// Throws std::invalid_argument if M is not symmetric to 1e-10 relative and
// std::runtime_error on solver non-convergence.
EighResult eigh_dense(const Eigen::MatrixXd& M);
Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& M);

// Symmetric tridiagonal eigenvalues (ascending); diag has size m, sub m-1.
Eigen::VectorXd eigvalsh_tridiagonal(const Eigen::VectorXd& diag,
                                     const Eigen::VectorXd& sub);

// Singular values, descending, via the Hermitian square.
std::vector<double> singular_values_of(const Eigen::MatrixXcd& A);
std::vector<double> singular_values_of(const Eigen::MatrixXd& A);

// Eigenvalues of a general complex matrix (unordered).
std::vector<std::complex<double>> complex_eigenvalues(const Eigen::MatrixXcd& A);

// Schatten p-(quasi)norm of a singular value sequence, p > 0.
double schatten_norm(std::span<const double> sv_descending, double p);
double schatten_norm(const Eigen::MatrixXcd& A, double p);

}  // namespace anhosc
