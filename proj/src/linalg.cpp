#include "jframe/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace jframe::linalg {

namespace {

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& M, unsigned options) {
  return Eigen::JacobiSVD<Matrix>(M, options);
}

}  // namespace

double rank_threshold(const Eigen::VectorXd& singular_values, const Tolerances& tol) {
  const double smax = singular_values.size() ? singular_values(0) : 0.0;
  return tol.rank_rel * std::max(1.0, smax);
}

int numeric_rank(const Matrix& M, const Tolerances& tol) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  auto svd = svd_of(M, 0);
  const double thr = rank_threshold(svd.singularValues(), tol);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thr) ++r;
  return r;
}

Matrix orthonormal_range(const Matrix& M, const Tolerances& tol) {
  if (M.rows() == 0 || M.cols() == 0) return Matrix(M.rows(), 0);
  auto svd = svd_of(M, Eigen::ComputeThinU);
  const double thr = rank_threshold(svd.singularValues(), tol);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thr) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& M, const Tolerances& tol) {
  if (M.cols() == 0) return Matrix(0, 0);
  if (M.rows() == 0) return Matrix::Identity(M.cols(), M.cols());
  auto svd = svd_of(M, Eigen::ComputeFullV);
  const double thr = rank_threshold(svd.singularValues(), tol);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thr) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

Matrix pseudo_inverse(const Matrix& M, const Tolerances& tol) {
  if (M.rows() == 0 || M.cols() == 0) return Matrix(M.cols(), M.rows());
  auto svd = svd_of(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double thr = rank_threshold(sv, tol);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thr) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

Matrix projector(const Matrix& B) { return B * B.adjoint(); }

bool subspace_equal(const Matrix& A, const Matrix& B, const Tolerances& tol) {
  if (A.rows() != B.rows()) return false;
  return operator_norm(projector(A) - projector(B)) <= tol.subspace_eq;
}

Matrix intersection(const Matrix& A, const Matrix& B, const Tolerances& tol) {
  if (A.cols() == 0 || B.cols() == 0) return Matrix(A.rows(), 0);
  // Principal cosines of (A, B); directions with cosine 1 span the intersection.
  auto svd = svd_of(A.adjoint() * B, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) >= 1.0 - tol.subspace_eq) ++r;
  return A * svd.matrixU().leftCols(r);
}

Matrix hermitize(const Matrix& A) { return 0.5 * (A + A.adjoint()); }

double operator_norm(const Matrix& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  return svd_of(A, 0).singularValues()(0);
}

Matrix hermitian_sqrt(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(A));
  Eigen::VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) lam(i) = std::sqrt(std::max(0.0, lam(i)));
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace jframe::linalg
