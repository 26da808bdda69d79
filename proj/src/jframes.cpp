#include "jframe/jframes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jframe/linalg.hpp"

namespace jframe {

using linalg::hermitize;
using linalg::operator_norm;

namespace {

Matrix select_columns(const Matrix& T, const std::vector<int>& idx) {
  Matrix out(T.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j)
    out.col(static_cast<Eigen::Index>(j)) = T.col(idx[j]);
  return out;
}

SubspaceBasis span_or_trivial(int n, const Matrix& T, const Tolerances& tol) {
  if (T.cols() == 0) return SubspaceBasis(n, Matrix(n, 0));
  return SubspaceBasis::from_span(T, tol);
}

// Optimal constants: extreme eigenvalues of the pencil (H, W) on the side
// subspace, where W is the compressed form s B* J B (positive definite) and
// H c = sum_i |[B c, f_i]|^2.  Minus side results are negated afterwards.
SideBounds pencil_bounds(const KreinSpace& space, const Matrix& B, const Matrix& T_side,
                         int sign) {
  const Matrix W = hermitize(B.adjoint() * space.J() * B) * static_cast<double>(sign);
  const Matrix C = B.adjoint() * space.J() * T_side;
  const Matrix H = hermitize(C * C.adjoint());
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(H, W);
  const auto& lam = ges.eigenvalues();
  const double a = lam(0), b = lam(lam.size() - 1);
  if (sign > 0) return SideBounds{a, b};
  return SideBounds{-a, -b};
}

SideBounds crude_bounds(const Matrix& T_side, double alpha, double gamma, int sign) {
  const double norm = operator_norm(T_side);
  const double A = alpha * alpha * gamma * gamma;
  const double B = norm * norm / alpha;
  if (sign > 0) return SideBounds{A, B};
  return SideBounds{-A, -B};
}

JFrameBounds compute_bounds(const KreinSpace& space, const JFrameReport& rep,
                            const Tolerances& tol) {
  JFrameBounds out;
  const Matrix Tp = select_columns(rep.family.T, rep.partition.I_plus);
  const Matrix Tm = select_columns(rep.family.T, rep.partition.I_minus);
  if (Tp.cols() > 0) {
    out.plus = pencil_bounds(space, rep.M_plus.B, Tp, +1);
    out.crude_plus = crude_bounds(Tp, *rep.class_plus.definiteness_bound,
                                  reduced_min_modulus(Tp, tol), +1);
  }
  if (Tm.cols() > 0) {
    out.minus = pencil_bounds(space, rep.M_minus.B, Tm, -1);
    out.crude_minus = crude_bounds(Tm, *rep.class_minus.definiteness_bound,
                                   reduced_min_modulus(Tm, tol), -1);
  }
  return out;
}

// One side of the maximality test.  An empty side is admissible only when the
// matching eigenspace is trivial (the space is definite in that direction).
bool side_admissible(const KreinSpace& space, bool plus, const SubspaceBasis& M,
                     const SubspaceClassification& cls, std::string* reason) {
  const int target = plus ? space.dim_plus() : space.dim_minus();
  const char* name = plus ? "M_plus" : "M_minus";
  const SubspaceKind want = plus ? SubspaceKind::positive : SubspaceKind::negative;
  if (M.dim() == 0) {
    if (target == 0) return true;
    *reason = std::string("no ") + (plus ? "positive" : "negative") +
              " vectors but dim H" + (plus ? "+" : "-") + " = " + std::to_string(target);
    return false;
  }
  if (cls.kind == SubspaceKind::indefinite) {
    *reason = std::string(name) + " indefinite";
    return false;
  }
  if (cls.degenerate_part_dim > 0) {
    *reason = std::string(name) + " degenerate: neutral direction present";
    return false;
  }
  if (cls.kind != want) {
    *reason = std::string(name) + " not uniformly J-" + (plus ? "positive" : "negative");
    return false;
  }
  if (!cls.maximal) {
    *reason = std::string(name) + " not maximal: dim " + std::to_string(M.dim()) +
              " < dim H" + (plus ? "+" : "-") + " " + std::to_string(target);
    return false;
  }
  return true;
}

struct SideGraph {
  bool graph = false;
  bool everywhere = false;
  double norm = std::numeric_limits<double>::infinity();
};

SideGraph side_graph(const KreinSpace& space, const SubspaceBasis& M, bool plus,
                     const Tolerances& tol) {
  const Matrix& Us = plus ? space.basis_plus() : space.basis_minus();
  const Matrix& Ut = plus ? space.basis_minus() : space.basis_plus();
  if (M.dim() == 0) return SideGraph{true, Us.cols() == 0, 0.0};
  const Matrix A_dom = Us.adjoint() * M.B;
  if (linalg::numeric_rank(A_dom, tol) < M.dim()) return SideGraph{false, false,
      std::numeric_limits<double>::infinity()};
  const Matrix K = (Ut.adjoint() * M.B) * linalg::pseudo_inverse(A_dom, tol);
  return SideGraph{true, linalg::numeric_rank(A_dom, tol) == Us.cols(),
                   operator_norm(K)};
}

}  // namespace

SignPartition partition_by_sign(const KreinSpace& space, const VectorFamily& F,
                                const Tolerances& tol, bool strict) {
  if (F.ambient_dim != space.dim())
    throw DimensionError("partition_by_sign: family ambient dimension mismatch");
  SignPartition part;
  part.sigma.resize(F.size());
  for (int i = 0; i < F.size(); ++i) {
    const Vector v = F.column(i);
    const double q = std::real(indefinite_inner(space, v, v));
    if (std::abs(q) <= tol.neutral_rel * v.squaredNorm()) {
      if (strict) throw NeutralVectorError(i);
      part.neutral.push_back(i);
      part.sigma[i] = 0;
    } else if (q > 0) {
      part.I_plus.push_back(i);
      part.sigma[i] = 1;
    } else {
      part.I_minus.push_back(i);
      part.sigma[i] = -1;
    }
  }
  return part;
}

JFrameReport is_j_frame(const KreinSpace& space, const VectorFamily& F,
                        const Tolerances& tol) {
  if (F.ambient_dim != space.dim())
    throw DimensionError("is_j_frame: family ambient dimension mismatch");
  JFrameReport rep;
  rep.family = F;
  rep.partition = partition_by_sign(space, F, tol, /*strict=*/true);

  const Matrix Tp = select_columns(F.T, rep.partition.I_plus);
  const Matrix Tm = select_columns(F.T, rep.partition.I_minus);
  rep.M_plus = span_or_trivial(space.dim(), Tp, tol);
  rep.M_minus = span_or_trivial(space.dim(), Tm, tol);
  rep.class_plus = classify_subspace(space, rep.M_plus, tol);
  rep.class_minus = classify_subspace(space, rep.M_minus, tol);

  std::string reason_plus, reason_minus;
  const bool ok_plus = side_admissible(space, true, rep.M_plus, rep.class_plus, &reason_plus);
  const bool ok_minus =
      side_admissible(space, false, rep.M_minus, rep.class_minus, &reason_minus);
  rep.is_j_frame = ok_plus && ok_minus;
  if (!ok_plus) rep.reason = reason_plus;
  if (!ok_minus) rep.reason += (rep.reason.empty() ? "" : "; ") + reason_minus;

  const Matrix& J = space.J();
  Matrix S_plus = Tp * Tp.adjoint() * J;
  Matrix S_minus = Tm * Tm.adjoint() * J;
  rep.S = S_plus - S_minus;
  rep.S_plus = std::move(S_plus);
  rep.S_minus = std::move(S_minus);

  const int kp = rep.M_plus.dim(), km = rep.M_minus.dim();
  if (kp + km == space.dim()) {
    Matrix X(space.dim(), space.dim());
    X.leftCols(kp) = rep.M_plus.B;
    X.rightCols(km) = rep.M_minus.B;
    if (linalg::numeric_rank(X, tol) == space.dim())
      rep.Q = oblique_projection(space, rep.M_plus, rep.M_minus, tol);
  }

  if (rep.is_j_frame) rep.bounds = compute_bounds(space, rep, tol);
  return rep;
}

JFrameBounds j_frame_bounds(const KreinSpace& space, const VectorFamily& F,
                            const Tolerances& tol) {
  JFrameReport rep = is_j_frame(space, F, tol);
  if (!rep.is_j_frame) throw NotAJFrameError("j_frame_bounds: " + rep.reason);
  return *rep.bounds;
}

Matrix j_frame_operator(const KreinSpace& space, const VectorFamily& F,
                        const Tolerances& tol) {
  const SignPartition part = partition_by_sign(space, F, tol, /*strict=*/true);
  Eigen::VectorXd sigma(F.size());
  for (int i = 0; i < F.size(); ++i) sigma(i) = part.sigma[i];
  return F.T * sigma.asDiagonal() * F.T.adjoint() * space.J();
}

JFrameDecomposition j_frame_decomposition(const KreinSpace& space,
                                          const JFrameReport& report) {
  (void)space;
  if (!report.is_j_frame)
    throw NotAJFrameError("j_frame_decomposition: " + report.reason);
  return JFrameDecomposition{*report.S_plus, *report.S_minus, *report.Q};
}

Reconstruction indefinite_reconstruct(const KreinSpace& space, const JFrameReport& report,
                                      const Vector& f, const Tolerances& tol) {
  (void)tol;
  if (!report.is_j_frame)
    throw NotAJFrameError("indefinite_reconstruct: " + report.reason);
  if (f.size() != space.dim())
    throw DimensionError("indefinite_reconstruct: vector length mismatch");
  const Matrix dual = report.S->partialPivLu().solve(report.family.T);
  const Vector Jf = space.J() * f;
  Reconstruction rec;
  rec.coefficients.resize(report.family.size());
  for (int i = 0; i < report.family.size(); ++i)
    rec.coefficients(i) =
        static_cast<double>(report.partition.sigma[i]) * dual.col(i).dot(Jf);
  rec.rebuilt = report.family.T * rec.coefficients;
  return rec;
}

VectorFamily canonical_dual_j_frame(const KreinSpace& space, const VectorFamily& F,
                                    const Tolerances& tol) {
  JFrameReport rep = is_j_frame(space, F, tol);
  if (!rep.is_j_frame)
    throw NotAJFrameError("canonical_dual_j_frame: " + rep.reason);
  VectorFamily dual = F;
  dual.T = rep.S->partialPivLu().solve(F.T);
  return dual;
}

TransitionCriterion transition_operator_criterion(const KreinSpace& space,
                                                  const VectorFamily& F,
                                                  const Tolerances& tol) {
  if (F.ambient_dim != space.dim())
    throw DimensionError("transition_operator_criterion: ambient dimension mismatch");
  const SignPartition part = partition_by_sign(space, F, tol, /*strict=*/true);
  const SubspaceBasis Mp =
      span_or_trivial(space.dim(), select_columns(F.T, part.I_plus), tol);
  const SubspaceBasis Mm =
      span_or_trivial(space.dim(), select_columns(F.T, part.I_minus), tol);
  const SideGraph gp = side_graph(space, Mp, true, tol);
  const SideGraph gm = side_graph(space, Mm, false, tol);

  TransitionCriterion out;
  out.graph_plus = gp.graph;
  out.graph_minus = gm.graph;
  out.everywhere_defined = gp.graph && gm.graph && gp.everywhere && gm.everywhere;
  out.norm = (gp.graph && gm.graph) ? std::max(gp.norm, gm.norm)
                                    : std::numeric_limits<double>::infinity();
  // ||F|| < 1 tested through the equivalent definiteness bound so the verdict
  // uses the same window as the subspace classification.
  const double alpha_equiv = std::isfinite(out.norm)
                                 ? (1.0 - out.norm * out.norm) / (1.0 + out.norm * out.norm)
                                 : -1.0;
  out.passes = out.everywhere_defined && alpha_equiv > tol.classify;
  return out;
}

VectorFamily build_from_maximal_pair(const KreinSpace& space, const VectorFamily& F_plus,
                                     const VectorFamily& F_minus, const Tolerances& tol) {
  if (F_plus.ambient_dim != space.dim() || F_minus.ambient_dim != space.dim())
    throw DimensionError("build_from_maximal_pair: ambient dimension mismatch");
  for (int i = 0; i < F_plus.size(); ++i)
    if (F_plus.column(i).norm() == 0.0) throw NeutralVectorError(i);
  for (int i = 0; i < F_minus.size(); ++i)
    if (F_minus.column(i).norm() == 0.0) throw NeutralVectorError(F_plus.size() + i);

  const auto cls_p = classify_subspace(space, SubspaceBasis::from_span(F_plus.T, tol), tol);
  if (cls_p.kind != SubspaceKind::positive || !cls_p.maximal)
    throw GeometryError(
        "build_from_maximal_pair: positive part does not span a maximal uniformly "
        "J-positive subspace");
  const auto cls_m = classify_subspace(space, SubspaceBasis::from_span(F_minus.T, tol), tol);
  if (cls_m.kind != SubspaceKind::negative || !cls_m.maximal)
    throw GeometryError(
        "build_from_maximal_pair: negative part does not span a maximal uniformly "
        "J-negative subspace");

  Matrix T(space.dim(), F_plus.size() + F_minus.size());
  T.leftCols(F_plus.size()) = F_plus.T;
  T.rightCols(F_minus.size()) = F_minus.T;
  std::vector<int> labels = F_plus.labels;
  labels.insert(labels.end(), F_minus.labels.begin(), F_minus.labels.end());
  return VectorFamily::from_columns(std::move(T), std::move(labels));
}

std::pair<int, int> index_signature(const KreinSpace& space, const Matrix& S,
                                    const Tolerances& tol) {
  if (S.rows() != space.dim() || S.cols() != space.dim())
    throw DimensionError("index_signature: operator shape mismatch");
  const Matrix JS = space.J() * S;
  const double scale = std::max(1.0, operator_norm(JS));
  if (operator_norm(JS - JS.adjoint()) > tol.structure * scale)
    throw OperatorError("index_signature: operator is not J-selfadjoint");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(JS));
  int pos = 0, neg = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > tol.classify * scale) ++pos;
    else if (es.eigenvalues()(i) < -tol.classify * scale) ++neg;
  }
  return {pos, neg};
}

bool j_frame_via_inequalities(const KreinSpace& space, const VectorFamily& F,
                              const Tolerances& tol) {
  if (!is_frame(F, tol))
    throw NotAFrameError("j_frame_via_inequalities: family is not a frame");
  const SignPartition part = partition_by_sign(space, F, tol, /*strict=*/true);
  for (int sign : {+1, -1}) {
    const auto& idx = sign > 0 ? part.I_plus : part.I_minus;
    const int target = sign > 0 ? space.dim_plus() : space.dim_minus();
    if (idx.empty()) {
      if (target > 0) return false;
      continue;
    }
    const SubspaceBasis M = SubspaceBasis::from_span(select_columns(F.T, idx), tol);
    const Matrix W =
        hermitize(M.B.adjoint() * space.J() * M.B) * static_cast<double>(sign);
    Eigen::SelfAdjointEigenSolver<Matrix> es(W);
    // Positive constants exist and the span is nondegenerate exactly when the
    // compressed form is positive definite.
    if (es.eigenvalues()(0) <= tol.classify) return false;
  }
  return true;
}

InequalityReport one_sided_inequalities(const KreinSpace& space, const VectorFamily& F,
                                        bool negative_side, const Tolerances& tol) {
  if (F.ambient_dim != space.dim())
    throw DimensionError("one_sided_inequalities: ambient dimension mismatch");
  const double s = negative_side ? -1.0 : 1.0;
  const SubspaceBasis M = SubspaceBasis::from_span(F.T, tol);
  const Matrix W = hermitize(M.B.adjoint() * space.J() * M.B) * s;
  Eigen::SelfAdjointEigenSolver<Matrix> es(W);
  const auto& lam = es.eigenvalues();

  InequalityReport out;
  out.satisfiable = lam(0) >= -tol.classify;
  for (int i = 0; i < lam.size(); ++i)
    if (std::abs(lam(i)) <= tol.classify) ++out.degenerate_dim;
  out.degenerate = out.degenerate_dim > 0;
  if (!out.satisfiable) return out;

  // Constants of the deflated span: the isotropic part carries no weight on
  // either side of the inequality.
  std::vector<int> keep;
  for (int i = 0; i < lam.size(); ++i)
    if (lam(i) > tol.classify) keep.push_back(i);
  if (keep.empty()) return out;
  Matrix E(lam.size(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    E.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
  const Matrix Bd = M.B * E;
  const SideBounds b = pencil_bounds(space, Bd, F.T, negative_side ? -1 : +1);
  out.A = std::abs(b.A);
  out.B = std::abs(b.B);
  return out;
}

}  // namespace jframe
