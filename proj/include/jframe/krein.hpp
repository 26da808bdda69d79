#pragma once

#include <optional>

#include "jframe/types.hpp"

namespace jframe {

// ============================================================================
// Indefinite geometry on C^n.
//
// Conventions, fixed across the whole library:
//   <x,y>  usual inner product, linear in the FIRST argument:  <x,y> = y* x.
//   [x,y]  = <Jx,y> = y* J x   for a Hermitian involution J (J = J*, J^2 = I).
//   T#     = J_in T* J_out, the adjoint with respect to [.,.] on both sides.
// J splits C^n into the +1 and -1 eigenspaces H+ and H-; a subspace is
// (uniformly) definite, neutral or indefinite according to the sign of [f,f]
// on it.
// ============================================================================

class KreinSpace {
 public:
  // Validates J = J* and J^2 = I, then caches the eigenspace split.
  static KreinSpace from_symmetry(Matrix J, const Tolerances& tol = {});

  // diag(1 x p, -1 x q).
  static KreinSpace signature(int p, int q);

  int dim() const { return static_cast<int>(j_.rows()); }
  const Matrix& J() const { return j_; }

  int dim_plus() const { return static_cast<int>(basis_plus_.cols()); }
  int dim_minus() const { return static_cast<int>(basis_minus_.cols()); }

  // Orthonormal bases of the eigenspaces (n x p, n x q).
  const Matrix& basis_plus() const { return basis_plus_; }
  const Matrix& basis_minus() const { return basis_minus_; }

  Matrix projection_plus() const;   // (I + J) / 2
  Matrix projection_minus() const;  // (I - J) / 2

 private:
  KreinSpace() = default;
  Matrix j_;
  Matrix basis_plus_;
  Matrix basis_minus_;
};

// Subspace held as an orthonormal column basis; the trivial subspace is a
// zero-column matrix.
struct SubspaceBasis {
  int ambient_dim = 0;
  Matrix B;

  SubspaceBasis() = default;
  SubspaceBasis(int n, Matrix basis) : ambient_dim(n), B(std::move(basis)) {}

  // Orthonormalizes an arbitrary spanning matrix (rank-revealing).
  static SubspaceBasis from_span(const Matrix& span, const Tolerances& tol = {});

  // Accepts an already orthonormal basis; validated.
  static SubspaceBasis from_orthonormal(Matrix B, const Tolerances& tol = {});

  int dim() const { return static_cast<int>(B.cols()); }
};

enum class SubspaceKind {
  positive,     // [f,f] > 0 on M \ {0}
  nonnegative,  // [f,f] >= 0, with a nonzero neutral direction
  neutral,      // [f,f] = 0 on M
  nonpositive,
  negative,
  indefinite,
};

const char* to_string(SubspaceKind k);

struct SubspaceClassification {
  SubspaceKind kind = SubspaceKind::neutral;
  // min |[f,f]| over unit f in M for semidefinite M (0 when degenerate);
  // absent for indefinite M.
  std::optional<double> definiteness_bound;
  // Smallest nonzero singular value of the Gramian P_M J P_M.  For a
  // degenerate M this stays away from zero: it sees only M with the isotropic
  // part split off, which is why it is reported separately from the bound.
  double gamma_gramian = 0.0;
  bool uniformly_definite = false;
  // Uniformly definite and dim M equals the matching dim H+-.
  bool maximal = false;
  int degenerate_part_dim = 0;  // dim of M intersected with its [.,.]-orthogonal
  RealVector form_eigenvalues;  // spectrum of B* J B, ascending
};

dcomplex indefinite_inner(const KreinSpace& space, const Vector& x, const Vector& y);

// T maps space_in to space_out (dim_out x dim_in); returns J_in T* J_out.
Matrix j_adjoint(const KreinSpace& space_in, const KreinSpace& space_out, const Matrix& T);

// P_M J P_M as an n x n matrix.
Matrix gramian(const KreinSpace& space, const SubspaceBasis& M);

// Smallest nonzero singular value; +infinity for the zero matrix.
double reduced_min_modulus(const Matrix& T, const Tolerances& tol = {});

// min |[f,f]| over unit f in M.  Throws ClassificationError for indefinite M.
double definiteness_bound(const KreinSpace& space, const SubspaceBasis& M,
                          const Tolerances& tol = {});

SubspaceClassification classify_subspace(const KreinSpace& space, const SubspaceBasis& M,
                                         const Tolerances& tol = {});

// The [.,.]-orthogonal companion (J M)^perp; dimension n - dim M.
SubspaceBasis j_orthogonal_companion(const KreinSpace& space, const SubspaceBasis& M,
                                     const Tolerances& tol = {});

// Friedrichs cosine: largest principal cosine of (S, T) after removing the
// intersection.  0 when either reduced subspace is trivial.
double friedrichs_angle(const SubspaceBasis& S, const SubspaceBasis& T,
                        const Tolerances& tol = {});

// Projection with range M and kernel N; GeometryError unless M and N are
// algebraic complements.
Matrix oblique_projection(const KreinSpace& space, const SubspaceBasis& M,
                          const SubspaceBasis& N, const Tolerances& tol = {});

// Projection onto M along its companion.  Exists exactly for uniformly
// definite M; GeometryError otherwise.
Matrix j_selfadjoint_projection(const KreinSpace& space, const SubspaceBasis& M,
                                const Tolerances& tol = {});

}  // namespace jframe
