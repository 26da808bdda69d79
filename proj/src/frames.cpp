#include "jframe/frames.hpp"

#include <numeric>

#include "jframe/linalg.hpp"

namespace jframe {

VectorFamily VectorFamily::from_columns(Matrix T, std::vector<int> labels) {
  if (T.rows() == 0 || T.cols() == 0)
    throw DimensionError("vector family needs at least one vector in a nonempty space");
  if (labels.empty()) {
    labels.resize(T.cols());
    std::iota(labels.begin(), labels.end(), 0);
  } else if (static_cast<int>(labels.size()) != T.cols()) {
    throw DimensionError("label count does not match the number of family vectors");
  }
  VectorFamily F;
  F.ambient_dim = static_cast<int>(T.rows());
  F.T = std::move(T);
  F.labels = std::move(labels);
  return F;
}

Matrix frame_operator(const VectorFamily& F) { return F.T * F.T.adjoint(); }

bool is_frame(const VectorFamily& F, const Tolerances& tol) {
  return linalg::numeric_rank(F.T, tol) == F.ambient_dim;
}

FrameBounds frame_bounds(const VectorFamily& F, const Tolerances& tol) {
  if (!is_frame(F, tol))
    throw NotAFrameError("family does not span the space");
  Eigen::SelfAdjointEigenSolver<Matrix> es(linalg::hermitize(frame_operator(F)));
  return FrameBounds{es.eigenvalues()(0), es.eigenvalues()(F.ambient_dim - 1)};
}

VectorFamily canonical_dual(const VectorFamily& F, const Tolerances& tol) {
  if (!is_frame(F, tol))
    throw NotAFrameError("family does not span the space, no canonical dual");
  const Matrix S = linalg::hermitize(frame_operator(F));
  VectorFamily dual = F;
  dual.T = S.ldlt().solve(F.T);
  return dual;
}

}  // namespace jframe
