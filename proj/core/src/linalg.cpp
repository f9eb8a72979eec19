#include "anhosc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace anhosc {

namespace {

void require_symmetric(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("eigh_dense: matrix not square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw std::invalid_argument("eigh_dense: matrix not symmetric within 1e-10 relative");
}

}  // namespace

EighResult eigh_dense(const Eigen::MatrixXd& M) {
  require_symmetric(M);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigh_dense: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& M) {
  require_symmetric(M);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigvalsh: eigensolver failed to converge");
  return es.eigenvalues();
}

Eigen::VectorXd eigvalsh_tridiagonal(const Eigen::VectorXd& diag,
                                     const Eigen::VectorXd& sub) {
  if (sub.size() != diag.size() - 1)
    throw std::invalid_argument("eigvalsh_tridiagonal: subdiagonal size mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigvalsh_tridiagonal: QL iteration failed to converge");
  return es.eigenvalues();
}

std::vector<double> singular_values_of(const Eigen::MatrixXcd& A) {
  const Eigen::MatrixXcd H = A.adjoint() * A;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("singular_values_of: eigensolver failed");
  std::vector<double> sv(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    sv[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

std::vector<double> singular_values_of(const Eigen::MatrixXd& A) {
  return singular_values_of(Eigen::MatrixXcd(A.cast<std::complex<double>>()));
}

std::vector<std::complex<double>> complex_eigenvalues(const Eigen::MatrixXcd& A) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("complex_eigenvalues: eigensolver failed");
  std::vector<std::complex<double>> out(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

double schatten_norm(std::span<const double> sv_descending, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("schatten_norm: p must be positive");
  if (std::isinf(p)) return sv_descending.empty() ? 0.0 : sv_descending.front();
  double acc = 0.0;
  for (double s : sv_descending) acc += std::pow(s, p);
  return std::pow(acc, 1.0 / p);
}

double schatten_norm(const Eigen::MatrixXcd& A, double p) {
  const auto sv = singular_values_of(A);
  return schatten_norm(sv, p);
}

}  // namespace anhosc
