#pragma once

#include "jframe/types.hpp"

namespace jframe::linalg {

// Singular values below rank_threshold(sv, tol) are treated as zero.
double rank_threshold(const Eigen::VectorXd& singular_values, const Tolerances& tol);

int numeric_rank(const Matrix& M, const Tolerances& tol = {});

// Orthonormal basis of the column span (n x rank).
Matrix orthonormal_range(const Matrix& M, const Tolerances& tol = {});

// Orthonormal basis of the null space (cols x (cols - rank)).
Matrix null_space(const Matrix& M, const Tolerances& tol = {});

Matrix pseudo_inverse(const Matrix& M, const Tolerances& tol = {});

// B B* for B with orthonormal columns.
Matrix projector(const Matrix& B);

// ||P_A - P_B|| <= tol.subspace_eq, both arguments orthonormal bases.
bool subspace_equal(const Matrix& A, const Matrix& B, const Tolerances& tol = {});

// Orthonormal basis of the intersection of span(A) and span(B), via principal vectors.
Matrix intersection(const Matrix& A, const Matrix& B, const Tolerances& tol = {});

Matrix hermitize(const Matrix& A);

double operator_norm(const Matrix& A);

// Principal square root of a Hermitian PSD matrix; negative noise is clamped.
Matrix hermitian_sqrt(const Matrix& A);

}  // namespace jframe::linalg
