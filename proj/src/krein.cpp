#include "jframe/krein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jframe/linalg.hpp"

namespace jframe {

using linalg::hermitize;
using linalg::operator_norm;

namespace {

void check_ambient(const KreinSpace& space, const SubspaceBasis& M, const char* what) {
  if (M.ambient_dim != space.dim())
    throw DimensionError(std::string(what) + ": subspace ambient dimension " +
                         std::to_string(M.ambient_dim) + " does not match space dimension " +
                         std::to_string(space.dim()));
}

}  // namespace

KreinSpace KreinSpace::from_symmetry(Matrix J, const Tolerances& tol) {
  const int n = static_cast<int>(J.rows());
  if (n == 0 || J.cols() != n)
    throw DimensionError("fundamental symmetry must be square and nonempty");
  const double scale = std::max(1.0, operator_norm(J));
  if (operator_norm(J - J.adjoint()) > tol.structure * scale)
    throw OperatorError("fundamental symmetry is not Hermitian");
  if (operator_norm(J * J - Matrix::Identity(n, n)) > tol.structure * scale)
    throw OperatorError("fundamental symmetry is not an involution");

  KreinSpace space;
  space.j_ = hermitize(J);
  Eigen::SelfAdjointEigenSolver<Matrix> es(space.j_);
  const auto& lam = es.eigenvalues();
  int q = 0;
  for (int i = 0; i < n; ++i)
    if (lam(i) < 0) ++q;
  // Eigenvalues ascending: the first q belong to H-, the rest to H+.
  space.basis_minus_ = es.eigenvectors().leftCols(q);
  space.basis_plus_ = es.eigenvectors().rightCols(n - q);
  return space;
}

KreinSpace KreinSpace::signature(int p, int q) {
  if (p < 0 || q < 0 || p + q == 0)
    throw DimensionError("signature needs p, q >= 0 with p + q >= 1");
  const int n = p + q;
  Eigen::VectorXd d(n);
  d.head(p).setOnes();
  d.tail(q).setConstant(-1.0);
  return from_symmetry(d.asDiagonal().toDenseMatrix().cast<dcomplex>());
}

Matrix KreinSpace::projection_plus() const {
  return 0.5 * (Matrix::Identity(dim(), dim()) + j_);
}

Matrix KreinSpace::projection_minus() const {
  return 0.5 * (Matrix::Identity(dim(), dim()) - j_);
}

SubspaceBasis SubspaceBasis::from_span(const Matrix& span, const Tolerances& tol) {
  if (span.rows() == 0) throw DimensionError("spanning matrix has no rows");
  return SubspaceBasis(static_cast<int>(span.rows()), linalg::orthonormal_range(span, tol));
}

SubspaceBasis SubspaceBasis::from_orthonormal(Matrix B, const Tolerances& tol) {
  if (B.rows() == 0) throw DimensionError("basis matrix has no rows");
  if (B.cols() > B.rows())
    throw DimensionError("basis has more columns than the ambient dimension");
  const int k = static_cast<int>(B.cols());
  if (k > 0 && operator_norm(B.adjoint() * B - Matrix::Identity(k, k)) > tol.structure)
    throw GeometryError("basis columns are not orthonormal");
  return SubspaceBasis(static_cast<int>(B.rows()), std::move(B));
}

const char* to_string(SubspaceKind k) {
  switch (k) {
    case SubspaceKind::positive: return "positive";
    case SubspaceKind::nonnegative: return "nonnegative";
    case SubspaceKind::neutral: return "neutral";
    case SubspaceKind::nonpositive: return "nonpositive";
    case SubspaceKind::negative: return "negative";
    case SubspaceKind::indefinite: return "indefinite";
  }
  return "unknown";
}

dcomplex indefinite_inner(const KreinSpace& space, const Vector& x, const Vector& y) {
  if (x.size() != space.dim() || y.size() != space.dim())
    throw DimensionError("indefinite_inner: vector length does not match the space");
  // [x,y] = <Jx,y> = y* (J x); Eigen's dot conjugates its receiver.
  return y.dot(space.J() * x);
}

Matrix j_adjoint(const KreinSpace& space_in, const KreinSpace& space_out, const Matrix& T) {
  if (T.rows() != space_out.dim() || T.cols() != space_in.dim())
    throw DimensionError("j_adjoint: operator shape does not match the given spaces");
  return space_in.J() * T.adjoint() * space_out.J();
}

Matrix gramian(const KreinSpace& space, const SubspaceBasis& M) {
  check_ambient(space, M, "gramian");
  const Matrix P = linalg::projector(M.B);
  return P * space.J() * P;
}

double reduced_min_modulus(const Matrix& T, const Tolerances& tol) {
  if (T.rows() == 0 || T.cols() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Matrix> svd(T);
  const auto& sv = svd.singularValues();
  const double thr = linalg::rank_threshold(sv, tol);
  double gamma = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thr) gamma = std::min(gamma, sv(i));
  return gamma;
}

SubspaceClassification classify_subspace(const KreinSpace& space, const SubspaceBasis& M,
                                         const Tolerances& tol) {
  check_ambient(space, M, "classify_subspace");
  SubspaceClassification out;
  const int k = M.dim();
  if (k == 0) {
    out.gamma_gramian = std::numeric_limits<double>::infinity();
    out.definiteness_bound = 0.0;
    out.form_eigenvalues = RealVector(0);
    return out;
  }

  const Matrix W = hermitize(M.B.adjoint() * space.J() * M.B);
  Eigen::SelfAdjointEigenSolver<Matrix> es(W);
  const RealVector lam = es.eigenvalues();  // ascending, within [-1, 1]

  int pos = 0, neg = 0, zero = 0;
  double gamma = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    if (lam(i) > tol.classify) ++pos;
    else if (lam(i) < -tol.classify) ++neg;
    else ++zero;
    if (std::abs(lam(i)) > tol.classify) gamma = std::min(gamma, std::abs(lam(i)));
  }

  if (pos > 0 && neg > 0) out.kind = SubspaceKind::indefinite;
  else if (pos > 0 && zero == 0) out.kind = SubspaceKind::positive;
  else if (pos > 0) out.kind = SubspaceKind::nonnegative;
  else if (neg > 0 && zero == 0) out.kind = SubspaceKind::negative;
  else if (neg > 0) out.kind = SubspaceKind::nonpositive;
  else out.kind = SubspaceKind::neutral;

  out.degenerate_part_dim = zero;
  out.gamma_gramian = gamma;
  out.form_eigenvalues = lam;

  if (out.kind != SubspaceKind::indefinite) {
    const bool negative_side =
        out.kind == SubspaceKind::negative || out.kind == SubspaceKind::nonpositive;
    const double alpha = negative_side ? -lam(k - 1) : lam(0);
    out.definiteness_bound = std::clamp(alpha, 0.0, 1.0);
  }

  out.uniformly_definite =
      (out.kind == SubspaceKind::positive || out.kind == SubspaceKind::negative);
  if (out.uniformly_definite) {
    const int target = out.kind == SubspaceKind::positive ? space.dim_plus() : space.dim_minus();
    out.maximal = (k == target);
  }
  return out;
}

double definiteness_bound(const KreinSpace& space, const SubspaceBasis& M,
                          const Tolerances& tol) {
  const auto cls = classify_subspace(space, M, tol);
  if (!cls.definiteness_bound)
    throw ClassificationError("definiteness_bound: subspace is indefinite");
  return *cls.definiteness_bound;
}

SubspaceBasis j_orthogonal_companion(const KreinSpace& space, const SubspaceBasis& M,
                                     const Tolerances& tol) {
  check_ambient(space, M, "j_orthogonal_companion");
  if (M.dim() == 0)
    return SubspaceBasis(space.dim(), Matrix::Identity(space.dim(), space.dim()));
  // (J M)^perp: kernel of (J B)*.
  const Matrix JB = space.J() * M.B;
  return SubspaceBasis(space.dim(), linalg::null_space(JB.adjoint(), tol));
}

double friedrichs_angle(const SubspaceBasis& S, const SubspaceBasis& T,
                        const Tolerances& tol) {
  if (S.ambient_dim != T.ambient_dim)
    throw DimensionError("friedrichs_angle: subspaces live in different spaces");
  if (S.dim() == 0 || T.dim() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(S.B.adjoint() * T.B);
  const auto& sv = svd.singularValues();  // descending principal cosines
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) < 1.0 - tol.subspace_eq) return std::clamp(sv(i), 0.0, 1.0);
  }
  return 0.0;
}

Matrix oblique_projection(const KreinSpace& space, const SubspaceBasis& M,
                          const SubspaceBasis& N, const Tolerances& tol) {
  check_ambient(space, M, "oblique_projection");
  check_ambient(space, N, "oblique_projection");
  const int n = space.dim();
  const int k = M.dim();
  if (k + N.dim() != n)
    throw GeometryError("oblique_projection: dimensions do not sum to the ambient dimension");
  Matrix X(n, n);
  X.leftCols(k) = M.B;
  X.rightCols(N.dim()) = N.B;
  if (linalg::numeric_rank(X, tol) < n)
    throw GeometryError("oblique_projection: subspaces are not complementary");
  // Q = [B_M 0] X^{-1}.
  Matrix Y = X.partialPivLu().inverse();
  return M.B * Y.topRows(k);
}

Matrix j_selfadjoint_projection(const KreinSpace& space, const SubspaceBasis& M,
                                const Tolerances& tol) {
  const auto cls = classify_subspace(space, M, tol);
  if (!cls.uniformly_definite)
    throw GeometryError(
        "j_selfadjoint_projection: subspace is not uniformly definite, no such projection");
  return oblique_projection(space, M, j_orthogonal_companion(space, M, tol), tol);
}

}  // namespace jframe
