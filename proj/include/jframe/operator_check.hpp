#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jframe/frames.hpp"
#include "jframe/krein.hpp"
#include "jframe/types.hpp"

namespace jframe {

// Decision results for the operator-level tests.  A true verdict always comes
// with the witness that certifies it; diagnostics carry the residuals the
// verdict was based on, also when it is false.
struct OperatorCertificate {
  bool verdict = false;
  std::optional<Matrix> witness_Q;
  std::optional<std::pair<Matrix, Matrix>> witness_split;
  std::optional<Matrix> witness_U;
  std::optional<std::vector<int>> witness_partition;
  std::vector<std::pair<std::string, double>> diagnostics;

  double diagnostic(const std::string& name) const;
};

// Whether T P_S Tdag is idempotent, for a coefficient-space subspace S.
// Equivalent to the kernel of T splitting along S; NotSurjectiveError when T
// does not cover the target space.
bool projection_split_test(const Matrix& T, const SubspaceBasis& S,
                           const Tolerances& tol = {});

// The splitting condition itself: N(T) = (N(T) cap S) + (N(T) cap S^perp).
// Decided directly from intersection dimensions, independent of any projection
// arithmetic.
bool kernel_splits(const Matrix& T, const SubspaceBasis& S, const Tolerances& tol = {});

// Whether the surjective T is the synthesis matrix of a J-frame with positive
// index set I_plus: the coefficient subspace spanned by {e_i : i in I_plus}
// meets N(T)^perp at angle < 1 and Q = T P_plus Tdag is a projection with
// maximal uniformly J-positive range and maximal uniformly J-negative kernel.
OperatorCertificate is_jframe_synthesis(const KreinSpace& space, const Matrix& T,
                                        const std::vector<int>& I_plus,
                                        const Tolerances& tol = {});

// Whether the split T = T1 + T2 has uniformly J-positive R(T1), uniformly
// J-negative R(T2) and T1 T2* = T2 T1* = 0.  When it does, also constructs a
// unitary U on the coefficient space such that the columns of T U are a
// J-frame in strict sign order (positive block first), and folds that check
// into the verdict.
OperatorCertificate unitary_reordering_test(const KreinSpace& space, const Matrix& T,
                                            const Matrix& T1, const Matrix& T2,
                                            const Tolerances& tol = {});

// Whether the invertible J-selfadjoint S is a J-frame operator, certified by
// the candidate projection Q: Q idempotent with maximal uniformly J-positive
// range and maximal uniformly J-negative kernel, QS J-positive and (I-Q)S
// J-negative.  OperatorError when S fails its preconditions.
OperatorCertificate is_j_frame_operator(const KreinSpace& space, const Matrix& S,
                                        const Matrix& Q, const Tolerances& tol = {});

// The subspace-image criterion: S maps the maximal uniformly J-positive
// T_subspace onto a subspace of the same kind, [Sf,f] >= 0 on T_subspace and
// [Sg,g] <= 0 on the companion of the image.  When the three conditions hold
// the projection onto S(T) along T^[perp] is built and handed to
// is_j_frame_operator; the delegate agrees and its Q becomes the witness.
OperatorCertificate positive_image_test(const KreinSpace& space, const Matrix& S,
                                        const SubspaceBasis& T_subspace,
                                        const Tolerances& tol = {});

// Builds a J-frame whose operator is exactly S1 - S2, given J-positive parts
// with R(S1) uniformly J-positive and R(S2) uniformly J-negative.  The minimal
// family has dim R(S1) + dim R(S2) vectors; extra_plus/extra_minus append
// redundant vectors through a random co-isometry drawn from seed.
VectorFamily construct_j_frame_from_operator(const KreinSpace& space, const Matrix& S1,
                                             const Matrix& S2, const Tolerances& tol = {},
                                             int extra_plus = 0, int extra_minus = 0,
                                             std::uint64_t seed = 1);

}  // namespace jframe
