#pragma once

#include <cstdint>
#include <vector>

#include "jframe/frames.hpp"
#include "jframe/krein.hpp"

namespace jframe {

// Correlation between a subspace and the neutral cone C = {x : [x,x] = 0}.
//
//   c0 = sup { |<m,n>| : m in M, n in C, ||m|| = ||n|| = 1 }
//      = ( sqrt((1+alpha)/2) + sqrt((1-alpha)/2) ) / sqrt(2)
//
// with alpha the definiteness bound of M.  theta = arccos(c0) lies in
// [0, pi/4]; M is uniformly definite exactly when theta > 0.  phi is the
// largest principal angle to the matching eigenspace of J ("aperture"), and
// phi + theta = pi/4.
struct ConeAngleReport {
  double c0 = 1.0;
  double theta = 0.0;
  double alpha = 0.0;    // bound fed into the closed forms; 0 for indefinite M
  double K_norm = 1.0;   // sqrt((1-alpha)/(1+alpha))
  double aperture = 1.0; // sin(phi) = sqrt((1-alpha)/2)
  double phi = 0.0;
  bool contains_neutral = false;  // a nonzero neutral vector lies in M
};

ConeAngleReport cone_correlation(const KreinSpace& space, const SubspaceBasis& M,
                                 const Tolerances& tol = {});

// Monte Carlo estimate of c0: for sampled unit m in M the inner supremum over
// the cone is exact, (||m_plus|| + ||m_minus||) / sqrt(2), so the estimate
// grows monotonically with the sample count and never exceeds the closed form.
// Returns 0 when the cone is trivial (definite ambient space).
double cone_correlation_oracle(const KreinSpace& space, const SubspaceBasis& M,
                               int samples, std::uint64_t seed,
                               const Tolerances& tol = {});

// Graph representation of a definite subspace: M = { x + Kx } with x running
// over a subspace of H+ (positive M) or H- (negative M).  K is written in the
// cached eigenbasis coordinates of the space.
struct AngularOperator {
  Matrix K;            // target-side coords x source-side coords
  Matrix domain;       // orthonormal basis of the domain, in source-side coords
  bool full_domain = false;  // domain is the whole matching eigenspace
  double norm = 0.0;
  bool over_plus = true;     // graph over H+ (else over H-)
};

// GeometryError when M projects rank-deficiently onto the chosen eigenspace
// (then M is no graph at all).
AngularOperator angular_operator(const KreinSpace& space, const SubspaceBasis& M,
                                 const Tolerances& tol = {});

// Frame partition test: true iff both classes span subspaces at positive
// angle to the neutral cone.  The trivial span counts as maximally separated.
bool j_frame_by_partition(const KreinSpace& space, const VectorFamily& F,
                          const std::vector<int>& I1, const std::vector<int>& I2,
                          const Tolerances& tol = {});

}  // namespace jframe
