#pragma once

#include <vector>

#include "jframe/types.hpp"

namespace jframe {

// Finite vector family {f_i}, stored as the columns of its synthesis matrix T.
struct VectorFamily {
  int ambient_dim = 0;
  Matrix T;                 // n x m, m >= 1
  std::vector<int> labels;  // external names per column, default 0..m-1

  static VectorFamily from_columns(Matrix T, std::vector<int> labels = {});

  int size() const { return static_cast<int>(T.cols()); }
  Vector column(int i) const { return T.col(i); }
};

struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
};

// T T*, equal to the sum of the rank-one terms f_i f_i*.
Matrix frame_operator(const VectorFamily& F);

// Extreme eigenvalues of the frame operator; NotAFrameError when the family
// does not span.
FrameBounds frame_bounds(const VectorFamily& F, const Tolerances& tol = {});

// {(T T*)^{-1} f_i}.
VectorFamily canonical_dual(const VectorFamily& F, const Tolerances& tol = {});

bool is_frame(const VectorFamily& F, const Tolerances& tol = {});

}  // namespace jframe
