#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jframe/cone.hpp"
#include "jframe/frames.hpp"
#include "jframe/krein.hpp"

namespace jframe {

// ============================================================================
// J-frames: frames whose positive and negative vectors span a maximal
// uniformly definite pair.  With the synthesis matrix T, the sign partition
// I+/I- and J2 = diag(sigma), the central operator is
//
//   S = T J2 T* J,      S f = sum_i sigma_i [f, f_i] f_i,
//
// invertible and J-selfadjoint exactly for J-frames.
// ============================================================================

struct SignPartition {
  std::vector<int> I_plus;
  std::vector<int> I_minus;
  std::vector<int> neutral;
  std::vector<int> sigma;  // +1 / -1 / 0 per column
};

// sigma_i = sign [f_i, f_i]; columns with |[f,f]| <= neutral_rel * ||f||^2 are
// neutral.  With strict = true a neutral column raises NeutralVectorError.
SignPartition partition_by_sign(const KreinSpace& space, const VectorFamily& F,
                                const Tolerances& tol = {}, bool strict = false);

struct SideBounds {
  double A = 0.0;
  double B = 0.0;
};

// Optimal and crude frame bounds per side.  Plus-side values satisfy
// 0 < A <= B; minus-side values are negative with B <= A < 0 and the
// inequalities read  A [f,f] <= sum |[f,f_i]|^2 <= B [f,f]  on the matching
// subspace.  A side is absent only when that side of the family is empty
// (definite ambient space).
struct JFrameBounds {
  std::optional<SideBounds> plus;
  std::optional<SideBounds> minus;
  std::optional<SideBounds> crude_plus;
  std::optional<SideBounds> crude_minus;
};

struct JFrameReport {
  bool is_j_frame = false;
  std::string reason;  // empty when the family is a J-frame
  VectorFamily family;
  SignPartition partition;
  SubspaceBasis M_plus;
  SubspaceBasis M_minus;
  SubspaceClassification class_plus;
  SubspaceClassification class_minus;
  std::optional<JFrameBounds> bounds;  // present iff is_j_frame
  std::optional<Matrix> S;             // present for any strictly signed family
  std::optional<Matrix> S_plus;
  std::optional<Matrix> S_minus;
  std::optional<Matrix> Q;  // projection onto M+ along M-, when complementary
};

// Full analysis; NeutralVectorError on a neutral column.
JFrameReport is_j_frame(const KreinSpace& space, const VectorFamily& F,
                        const Tolerances& tol = {});

// Optimal bounds via the Hermitian pencil of the restricted frame operator
// against the Gramian compression; NotAJFrameError when F is not a J-frame.
JFrameBounds j_frame_bounds(const KreinSpace& space, const VectorFamily& F,
                            const Tolerances& tol = {});

// S = T J2 T* J for any strictly signed family.
Matrix j_frame_operator(const KreinSpace& space, const VectorFamily& F,
                        const Tolerances& tol = {});

struct JFrameDecomposition {
  Matrix S_plus;   // T+ T+* J, range M+, kernel the companion of M+
  Matrix S_minus;  // T- T-* J, with S = S_plus - S_minus
  Matrix Q;        // projection onto M+ along M-
};

JFrameDecomposition j_frame_decomposition(const KreinSpace& space,
                                          const JFrameReport& report);

struct Reconstruction {
  Vector coefficients;  // sigma_i [f, S^{-1} f_i]
  Vector rebuilt;       // sum_i coefficients_i f_i
};

// Indefinite reconstruction through the canonical dual; the coefficient
// vector is the minimal-norm solution of T c = f.
Reconstruction indefinite_reconstruct(const KreinSpace& space, const JFrameReport& report,
                                      const Vector& f, const Tolerances& tol = {});

// {S^{-1} f_i}; a J-frame with the same sign partition whose operator is S^{-1}.
VectorFamily canonical_dual_j_frame(const KreinSpace& space, const VectorFamily& F,
                                    const Tolerances& tol = {});

// Angular-operator test: both spans are graphs over their eigenspaces, the
// domains fill H+ and H-, and the combined operator has norm < 1.
struct TransitionCriterion {
  bool everywhere_defined = false;
  bool graph_plus = false;
  bool graph_minus = false;
  double norm = 0.0;  // +infinity when a side is not a graph
  bool passes = false;
};

TransitionCriterion transition_operator_criterion(const KreinSpace& space,
                                                  const VectorFamily& F,
                                                  const Tolerances& tol = {});

// Glues a frame for a maximal uniformly positive span with one for a maximal
// uniformly negative span; GeometryError when a span fails its classification.
VectorFamily build_from_maximal_pair(const KreinSpace& space, const VectorFamily& F_plus,
                                     const VectorFamily& F_minus,
                                     const Tolerances& tol = {});

// Inertia of the Hermitian form J S; OperatorError when S is not
// J-selfadjoint.  For a J-frame operator this equals (dim H+, dim H-).
std::pair<int, int> index_signature(const KreinSpace& space, const Matrix& S,
                                    const Tolerances& tol = {});

// Decision through the two-sided bound inequalities: the family is a frame,
// both spans are nondegenerate, and positive constants exist on each side.
// Agrees with is_j_frame.
bool j_frame_via_inequalities(const KreinSpace& space, const VectorFamily& F,
                              const Tolerances& tol = {});

// One-sided diagnostic: whether constants 0 < A <= B with
// A s[f,f] <= sum |[f,f_i]|^2 <= B s[f,f] exist on span(F) with the isotropic
// part split off (s = -1 on the negative side).  A and B are reported as the
// positive magnitudes; degenerate marks an isotropic direction in the span.
struct InequalityReport {
  bool satisfiable = false;
  double A = 0.0;
  double B = 0.0;
  bool degenerate = false;
  int degenerate_dim = 0;
};

InequalityReport one_sided_inequalities(const KreinSpace& space, const VectorFamily& F,
                                        bool negative_side, const Tolerances& tol = {});

}  // namespace jframe
