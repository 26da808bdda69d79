#include "jframe/operator_check.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "jframe/jframes.hpp"
#include "jframe/linalg.hpp"

namespace jframe {

using linalg::hermitize;
using linalg::null_space;
using linalg::operator_norm;
using linalg::orthonormal_range;

namespace {

void require_surjective(const Matrix& T, const Tolerances& tol, const char* who) {
  if (linalg::numeric_rank(T, tol) < T.rows())
    throw NotSurjectiveError(std::string(who) + ": matrix does not cover the space");
}

double idempotency_residual(const Matrix& Q) { return operator_norm(Q * Q - Q); }

bool idempotent(const Matrix& Q, const Tolerances& tol) {
  const double scale = std::max(1.0, operator_norm(Q));
  return idempotency_residual(Q) <= tol.structure * scale * scale;
}

// Side test shared by the certificates: an empty subspace is admissible only
// when the matching eigenspace is trivial; otherwise the classification must
// come out definite of the right sign and maximal.
bool definite_side(const KreinSpace& space, const SubspaceBasis& M, bool plus,
                   const SubspaceClassification& cls) {
  if (M.dim() == 0) return plus ? space.dim_plus() == 0 : space.dim_minus() == 0;
  const SubspaceKind want = plus ? SubspaceKind::positive : SubspaceKind::negative;
  return cls.kind == want && cls.maximal;
}

void require_operator(const KreinSpace& space, const Matrix& S, const Tolerances& tol,
                      const char* who) {
  if (S.rows() != space.dim() || S.cols() != space.dim())
    throw DimensionError(std::string(who) + ": operator shape mismatch");
  const Matrix JS = space.J() * S;
  const double scale = std::max(1.0, operator_norm(JS));
  if (operator_norm(JS - JS.adjoint()) > tol.structure * scale)
    throw OperatorError(std::string(who) + ": operator is not J-selfadjoint");
  if (linalg::numeric_rank(S, tol) < space.dim())
    throw OperatorError(std::string(who) + ": operator is not invertible");
}

double lambda_min(const Matrix& H) {
  if (H.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  return es.eigenvalues()(0);
}

double psd_floor(const Matrix& H, const Tolerances& tol) {
  return tol.psd_rel * std::max(1.0, operator_norm(H));
}

Matrix dft_unitary(int k) {
  Matrix F(k, k);
  const double step = 2.0 * std::numbers::pi / k;
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < k; ++l)
      F(j, l) = std::polar(1.0 / std::sqrt(static_cast<double>(k)), step * j * l);
  return F;
}

// Orthonormal basis of N(T1) whose vectors all avoid N(T), so the negative
// block of T U has no neutral columns.  N(T) sits inside N(T1); mixing the
// complement into the kernel part with a DFT keeps every column off N(T)
// because the first DFT row has no zero entries.
Matrix kernel_basis_avoiding(const Matrix& T, const Matrix& T1, const Tolerances& tol) {
  const Matrix N1 = null_space(T1, tol);
  if (N1.cols() == 0) return N1;
  const Matrix N = null_space(T, tol);
  if (N.cols() == 0) return N1;
  const Matrix W1 = orthonormal_range(N1 - N * (N.adjoint() * N1), tol);
  if (W1.cols() == 0) return N1;  // N(T1) = N(T); only consistent without a negative side
  Matrix mixed(N1.rows(), N1.cols());
  mixed.leftCols(W1.cols()) = W1;
  mixed.rightCols(N.cols()) = N;
  return mixed * dft_unitary(static_cast<int>(N1.cols()));
}

Matrix random_coisometry(int k, int m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) G(i, j) = dcomplex(gauss(rng), gauss(rng));
  const Matrix Q = Eigen::HouseholderQR<Matrix>(G).householderQ();
  return Q.topRows(k);
}

}  // namespace

double OperatorCertificate::diagnostic(const std::string& name) const {
  for (const auto& [key, value] : diagnostics)
    if (key == name) return value;
  throw Error("no diagnostic named " + name);
}

bool projection_split_test(const Matrix& T, const SubspaceBasis& S,
                           const Tolerances& tol) {
  if (S.ambient_dim != T.cols())
    throw DimensionError("projection_split_test: subspace lives in the wrong space");
  require_surjective(T, tol, "projection_split_test");
  const SubspaceBasis row_space(static_cast<int>(T.cols()),
                                orthonormal_range(T.adjoint(), tol));
  if (friedrichs_angle(S, row_space, tol) >= 1.0 - tol.subspace_eq)
    throw PreconditionError("projection_split_test: angle condition fails");
  const Matrix Q = T * linalg::projector(S.B) * linalg::pseudo_inverse(T, tol);
  return idempotent(Q, tol);
}

bool kernel_splits(const Matrix& T, const SubspaceBasis& S, const Tolerances& tol) {
  if (S.ambient_dim != T.cols())
    throw DimensionError("kernel_splits: subspace lives in the wrong space");
  require_surjective(T, tol, "kernel_splits");
  const Matrix N = null_space(T, tol);
  if (N.cols() == 0) return true;
  const Matrix S_perp = null_space(S.B.adjoint(), tol);
  const Eigen::Index inside = linalg::intersection(N, S.B, tol).cols();
  const Eigen::Index outside = linalg::intersection(N, S_perp, tol).cols();
  return inside + outside == N.cols();
}

OperatorCertificate is_jframe_synthesis(const KreinSpace& space, const Matrix& T,
                                        const std::vector<int>& I_plus,
                                        const Tolerances& tol) {
  if (T.rows() != space.dim())
    throw DimensionError("is_jframe_synthesis: matrix rows mismatch the space");
  require_surjective(T, tol, "is_jframe_synthesis");
  const int m = static_cast<int>(T.cols());
  std::vector<bool> seen(m, false);
  for (int i : I_plus) {
    if (i < 0 || i >= m || seen[i])
      throw PreconditionError("is_jframe_synthesis: invalid index set");
    seen[i] = true;
  }

  Matrix E = Matrix::Zero(m, static_cast<Eigen::Index>(I_plus.size()));
  for (std::size_t j = 0; j < I_plus.size(); ++j) E(I_plus[j], j) = 1.0;
  const SubspaceBasis coeff(m, E);
  const SubspaceBasis row_space(m, orthonormal_range(T.adjoint(), tol));
  const double angle = friedrichs_angle(coeff, row_space, tol);

  const Matrix Q = T * linalg::projector(E) * linalg::pseudo_inverse(T, tol);
  const double r_idem = idempotency_residual(Q);
  const SubspaceBasis range(space.dim(), orthonormal_range(Q, tol));
  const SubspaceBasis kernel(space.dim(), null_space(Q, tol));
  const auto cls_range = classify_subspace(space, range, tol);
  const auto cls_kernel = classify_subspace(space, kernel, tol);

  OperatorCertificate cert;
  cert.witness_Q = Q;
  cert.witness_partition = I_plus;
  cert.diagnostics = {
      {"angle", angle},
      {"idempotency", r_idem},
      {"alpha_range", cls_range.definiteness_bound.value_or(-1.0)},
      {"alpha_kernel", cls_kernel.definiteness_bound.value_or(-1.0)},
  };
  cert.verdict = angle < 1.0 - tol.subspace_eq && idempotent(Q, tol) &&
                 definite_side(space, range, true, cls_range) &&
                 definite_side(space, kernel, false, cls_kernel);
  return cert;
}

OperatorCertificate unitary_reordering_test(const KreinSpace& space, const Matrix& T,
                                            const Matrix& T1, const Matrix& T2,
                                            const Tolerances& tol) {
  if (T.rows() != space.dim())
    throw DimensionError("unitary_reordering_test: matrix rows mismatch the space");
  if (T1.rows() != T.rows() || T1.cols() != T.cols() || T2.rows() != T.rows() ||
      T2.cols() != T.cols())
    throw DimensionError("unitary_reordering_test: split shapes mismatch");
  require_surjective(T, tol, "unitary_reordering_test");
  const double scale = std::max(1.0, operator_norm(T));
  if (operator_norm(T1 + T2 - T) > tol.structure * scale)
    throw PreconditionError("unitary_reordering_test: split does not sum to T");

  const auto R1 = SubspaceBasis::from_span(T1, tol);
  const auto R2 = SubspaceBasis::from_span(T2, tol);
  const auto cls1 = classify_subspace(space, R1, tol);
  const auto cls2 = classify_subspace(space, R2, tol);
  const double cross = std::max(operator_norm(T1 * T2.adjoint()),
                                operator_norm(T2 * T1.adjoint()));
  const double cross_scale =
      std::max(1.0, operator_norm(T1) * operator_norm(T2));

  OperatorCertificate cert;
  cert.witness_split = std::make_pair(T1, T2);
  cert.diagnostics = {
      {"cross_product", cross},
      {"alpha_plus", cls1.definiteness_bound.value_or(-1.0)},
      {"alpha_minus", cls2.definiteness_bound.value_or(-1.0)},
  };
  cert.verdict = definite_side(space, R1, true, cls1) &&
                 definite_side(space, R2, false, cls2) &&
                 cross <= tol.structure * cross_scale;
  if (!cert.verdict) return cert;

  // Proof witness: send the standard basis to N(T1)^perp first, then N(T1).
  // On the first block T acts as T1 (strictly positive columns), on the second
  // as T2 (strictly negative ones, the kernel basis steering clear of N(T)).
  const Matrix U_perp = orthonormal_range(T1.adjoint(), tol);
  const Matrix U_ker = kernel_basis_avoiding(T, T1, tol);
  Matrix U(T.cols(), T.cols());
  U.leftCols(U_perp.cols()) = U_perp;
  U.rightCols(U_ker.cols()) = U_ker;
  // Without a negative part the kernel block lies inside N(T); mixing it
  // across the whole basis keeps every column nonzero, and nonzero means
  // positive in a definite space.
  if (space.dim_minus() == 0 && U_ker.cols() > 0)
    U = U * dft_unitary(static_cast<int>(T.cols()));

  const VectorFamily reordered = VectorFamily::from_columns(T * U);
  bool reordered_ok = false;
  std::vector<int> I_plus;
  try {
    const JFrameReport rep = is_j_frame(space, reordered, tol);
    reordered_ok = rep.is_j_frame;
    I_plus = rep.partition.I_plus;
  } catch (const NeutralVectorError&) {
    reordered_ok = false;
  }
  cert.diagnostics.emplace_back("reordered_is_j_frame", reordered_ok ? 1.0 : 0.0);
  cert.verdict = reordered_ok;
  if (reordered_ok) {
    cert.witness_U = U;
    cert.witness_partition = std::move(I_plus);
  }
  return cert;
}

OperatorCertificate is_j_frame_operator(const KreinSpace& space, const Matrix& S,
                                        const Matrix& Q, const Tolerances& tol) {
  require_operator(space, S, tol, "is_j_frame_operator");
  if (Q.rows() != space.dim() || Q.cols() != space.dim())
    throw DimensionError("is_j_frame_operator: projection shape mismatch");

  const double r_idem = idempotency_residual(Q);
  const SubspaceBasis range(space.dim(), orthonormal_range(Q, tol));
  const SubspaceBasis kernel(space.dim(), null_space(Q, tol));
  const auto cls_range = classify_subspace(space, range, tol);
  const auto cls_kernel = classify_subspace(space, kernel, tol);

  const Matrix pos_part = hermitize(space.J() * Q * S);
  const Matrix neg_part = hermitize(-space.J() * (Matrix::Identity(S.rows(), S.cols()) - Q) * S);
  const double lam_pos = lambda_min(pos_part);
  const double lam_neg = lambda_min(neg_part);

  OperatorCertificate cert;
  cert.witness_Q = Q;
  cert.diagnostics = {
      {"idempotency", r_idem},
      {"alpha_range", cls_range.definiteness_bound.value_or(-1.0)},
      {"alpha_kernel", cls_kernel.definiteness_bound.value_or(-1.0)},
      {"positive_part_min", lam_pos},
      {"negative_part_min", lam_neg},
  };
  cert.verdict = idempotent(Q, tol) && definite_side(space, range, true, cls_range) &&
                 definite_side(space, kernel, false, cls_kernel) &&
                 lam_pos >= -psd_floor(pos_part, tol) &&
                 lam_neg >= -psd_floor(neg_part, tol);
  return cert;
}

OperatorCertificate positive_image_test(const KreinSpace& space, const Matrix& S,
                                        const SubspaceBasis& T_subspace,
                                        const Tolerances& tol) {
  require_operator(space, S, tol, "positive_image_test");
  const auto cls_T = classify_subspace(space, T_subspace, tol);
  if (!(definite_side(space, T_subspace, true, cls_T)))
    throw GeometryError(
        "positive_image_test: subspace is not maximal uniformly J-positive");

  const SubspaceBasis image = SubspaceBasis::from_span(S * T_subspace.B, tol);
  const auto cls_image = classify_subspace(space, image, tol);
  const bool image_ok = definite_side(space, image, true, cls_image);

  const Matrix on_T = hermitize(T_subspace.B.adjoint() * space.J() * S * T_subspace.B);
  const double lam_on_T = lambda_min(on_T);
  const bool forward_ok = lam_on_T >= -psd_floor(on_T, tol);

  const SubspaceBasis companion = j_orthogonal_companion(space, image, tol);
  const Matrix on_comp = hermitize(-(companion.B.adjoint() * space.J() * S * companion.B));
  const double lam_on_comp = lambda_min(on_comp);
  const bool companion_ok = lam_on_comp >= -psd_floor(on_comp, tol);

  OperatorCertificate cert;
  cert.diagnostics = {
      {"alpha_image", cls_image.definiteness_bound.value_or(-1.0)},
      {"form_on_subspace_min", lam_on_T},
      {"form_on_companion_min", lam_on_comp},
  };
  if (!(image_ok && forward_ok && companion_ok)) return cert;

  const SubspaceBasis T_perp = j_orthogonal_companion(space, T_subspace, tol);
  const Matrix Q = oblique_projection(space, image, T_perp, tol);
  const OperatorCertificate delegate = is_j_frame_operator(space, S, Q, tol);
  cert.witness_Q = Q;
  cert.diagnostics.emplace_back("delegate_verdict", delegate.verdict ? 1.0 : 0.0);
  cert.verdict = delegate.verdict;
  return cert;
}

VectorFamily construct_j_frame_from_operator(const KreinSpace& space, const Matrix& S1,
                                             const Matrix& S2, const Tolerances& tol,
                                             int extra_plus, int extra_minus,
                                             std::uint64_t seed) {
  if (extra_plus < 0 || extra_minus < 0)
    throw PreconditionError("construct_j_frame_from_operator: negative redundancy");
  std::mt19937_64 rng(seed);

  const auto factor_side = [&](const Matrix& Sj, bool plus, int extra) {
    if (Sj.rows() != space.dim() || Sj.cols() != space.dim())
      throw DimensionError("construct_j_frame_from_operator: operator shape mismatch");
    const Matrix JS = space.J() * Sj;
    const double scale = std::max(1.0, operator_norm(JS));
    if (operator_norm(JS - JS.adjoint()) > tol.structure * scale)
      throw OperatorError("construct_j_frame_from_operator: part is not J-selfadjoint");
    if (lambda_min(hermitize(JS)) < -psd_floor(JS, tol))
      throw OperatorError("construct_j_frame_from_operator: part is not J-positive");

    const SubspaceBasis K(space.dim(), orthonormal_range(Sj, tol));
    if (K.dim() > 0) {
      const auto cls = classify_subspace(space, K, tol);
      const SubspaceKind want = plus ? SubspaceKind::positive : SubspaceKind::negative;
      if (cls.kind != want)
        throw GeometryError(std::string("construct_j_frame_from_operator: range is not "
                                        "uniformly J-") +
                            (plus ? "positive" : "negative"));
    }

    // The compression of Sj J to its range is Hermitian positive definite;
    // its principal square root L gives the frame through T = B L, with
    // T T* = B L L B* = Sj J exactly because B B* fixes Sj J.
    const Matrix A = K.B.adjoint() * (Sj * space.J()) * K.B;
    if (K.dim() > 0 &&
        lambda_min(hermitize(A)) <= tol.classify * std::max(1.0, operator_norm(A)))
      throw OperatorError(
          "construct_j_frame_from_operator: compression is not positive definite");
    Matrix Tj = K.B * linalg::hermitian_sqrt(hermitize(A));
    if (extra > 0 && K.dim() > 0)
      Tj *= random_coisometry(K.dim(), K.dim() + extra, rng);
    return Tj;
  };

  const Matrix T_plus = factor_side(S1, true, extra_plus);
  const Matrix T_minus = factor_side(S2, false, extra_minus);
  Matrix T(space.dim(), T_plus.cols() + T_minus.cols());
  T.leftCols(T_plus.cols()) = T_plus;
  T.rightCols(T_minus.cols()) = T_minus;
  return VectorFamily::from_columns(std::move(T));
}

}  // namespace jframe
