#include "jframe/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "jframe/linalg.hpp"

namespace jframe {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

ConeAngleReport report_from_alpha(double alpha, bool contains_neutral) {
  ConeAngleReport r;
  r.alpha = std::clamp(alpha, 0.0, 1.0);
  const double s = std::sqrt((1.0 - r.alpha) / 2.0);  // sin(phi)
  const double c = std::sqrt((1.0 + r.alpha) / 2.0);  // cos(phi)
  r.phi = std::asin(std::min(1.0, s));
  r.theta = std::max(0.0, kQuarterPi - r.phi);
  r.c0 = (c + s) / std::numbers::sqrt2;
  r.K_norm = std::sqrt((1.0 - r.alpha) / (1.0 + r.alpha));
  r.aperture = s;
  r.contains_neutral = contains_neutral;
  return r;
}

std::vector<int> checked_class(const std::vector<int>& I, int m, const char* name) {
  std::vector<int> c = I;
  std::sort(c.begin(), c.end());
  for (int i : c)
    if (i < 0 || i >= m)
      throw PreconditionError(std::string(name) + " contains an out-of-range index");
  if (std::adjacent_find(c.begin(), c.end()) != c.end())
    throw PreconditionError(std::string(name) + " repeats an index");
  return c;
}

Matrix select_columns(const Matrix& T, const std::vector<int>& idx) {
  Matrix out(T.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = T.col(idx[j]);
  return out;
}

}  // namespace

ConeAngleReport cone_correlation(const KreinSpace& space, const SubspaceBasis& M,
                                 const Tolerances& tol) {
  if (M.dim() == 0) {
    // Trivial subspace: no direction correlates with the cone at all.
    return report_from_alpha(1.0, false);
  }
  const auto cls = classify_subspace(space, M, tol);
  if (!cls.definiteness_bound) {
    // Indefinite M meets the cone, so the correlation saturates.
    return report_from_alpha(0.0, true);
  }
  const double alpha = *cls.definiteness_bound;
  return report_from_alpha(alpha, alpha <= tol.classify);
}

double cone_correlation_oracle(const KreinSpace& space, const SubspaceBasis& M,
                               int samples, std::uint64_t seed, const Tolerances& tol) {
  if (M.ambient_dim != space.dim())
    throw DimensionError("cone_correlation_oracle: ambient dimension mismatch");
  if (M.dim() == 0) return 0.0;
  if (space.dim_plus() == 0 || space.dim_minus() == 0) return 0.0;  // trivial cone
  (void)tol;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Matrix Pp = space.projection_plus();
  const int k = M.dim();

  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vector c(k);
    for (int i = 0; i < k; ++i) c(i) = dcomplex(gauss(rng), gauss(rng));
    const double nc = c.norm();
    if (nc == 0.0) continue;
    const Vector m = M.B * (c / nc);
    const Vector mp = Pp * m;
    const Vector mm = m - mp;
    // Inner supremum over unit neutral n, attained at the balanced mix of the
    // normalized components of m.
    best = std::max(best, (mp.norm() + mm.norm()) / std::numbers::sqrt2);
  }
  return best;
}

AngularOperator angular_operator(const KreinSpace& space, const SubspaceBasis& M,
                                 const Tolerances& tol) {
  if (M.ambient_dim != space.dim())
    throw DimensionError("angular_operator: ambient dimension mismatch");
  const auto cls = classify_subspace(space, M, tol);
  const bool over_plus = !(cls.kind == SubspaceKind::negative ||
                           cls.kind == SubspaceKind::nonpositive);
  const Matrix& Us = over_plus ? space.basis_plus() : space.basis_minus();
  const Matrix& Ut = over_plus ? space.basis_minus() : space.basis_plus();

  const Matrix A_dom = Us.adjoint() * M.B;  // source-side components
  const Matrix A_tgt = Ut.adjoint() * M.B;
  if (linalg::numeric_rank(A_dom, tol) < M.dim())
    throw GeometryError(
        "angular_operator: subspace projects rank-deficiently, it is not a graph");

  AngularOperator out;
  out.over_plus = over_plus;
  out.K = A_tgt * linalg::pseudo_inverse(A_dom, tol);
  out.domain = linalg::orthonormal_range(A_dom, tol);
  out.full_domain = (out.domain.cols() == Us.cols());
  out.norm = linalg::operator_norm(out.K);
  return out;
}

bool j_frame_by_partition(const KreinSpace& space, const VectorFamily& F,
                          const std::vector<int>& I1, const std::vector<int>& I2,
                          const Tolerances& tol) {
  if (F.ambient_dim != space.dim())
    throw DimensionError("j_frame_by_partition: family ambient dimension mismatch");
  if (!is_frame(F, tol))
    throw NotAFrameError("j_frame_by_partition: family is not a frame");

  auto c1 = checked_class(I1, F.size(), "I1");
  auto c2 = checked_class(I2, F.size(), "I2");
  std::vector<int> all;
  all.reserve(c1.size() + c2.size());
  std::merge(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(all));
  if (static_cast<int>(all.size()) != F.size())
    throw PreconditionError("I1 and I2 do not partition the index set");
  for (int i = 0; i < F.size(); ++i)
    if (all[static_cast<std::size_t>(i)] != i)
      throw PreconditionError("I1 and I2 do not partition the index set");

  for (const auto* cls : {&c1, &c2}) {
    SubspaceBasis M = cls->empty()
                          ? SubspaceBasis(space.dim(), Matrix(space.dim(), 0))
                          : SubspaceBasis::from_span(select_columns(F.T, *cls), tol);
    if (cone_correlation(space, M, tol).theta <= tol.angle) return false;
  }
  return true;
}

}  // namespace jframe
