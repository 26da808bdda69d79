#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jframe {

using dcomplex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numeric thresholds threaded through every operation.  Classification always
// happens on B* J B with B orthonormal and J a unitary involution, so those
// spectra live in [-1, 1] and the absolute windows below are scale-safe.
struct Tolerances {
  double rank_rel = 1e-10;     // sigma <= rank_rel * max(1, sigma_max) counts as rank noise
  double structure = 1e-8;     // validation of J, orthonormality, complementarity
  double neutral_rel = 1e-10;  // |[f,f]| <= neutral_rel * ||f||^2 classes f as neutral
  double classify = 1e-10;     // eigenvalue window for subspace classification
  double angle = 1e-8;         // theta > angle means "bounded away from the neutral cone"
  double psd_rel = 1e-9;       // eigenvalue floor -psd_rel * ||A|| when testing J-positivity
  double subspace_eq = 1e-8;   // projector distance under which two subspaces are equal
  double residual = 1e-9;      // certificate residual acceptance

  // Uniform rescale, used by the CLI --tol flag.
  Tolerances scaled(double s) const {
    Tolerances t = *this;
    t.rank_rel *= s;
    t.structure *= s;
    t.neutral_rel *= s;
    t.classify *= s;
    t.angle *= s;
    t.psd_rel *= s;
    t.subspace_eq *= s;
    t.residual *= s;
    return t;
  }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct ClassificationError : Error { using Error::Error; };
struct GeometryError : Error { using Error::Error; };
struct NotAFrameError : Error { using Error::Error; };
struct NotAJFrameError : Error { using Error::Error; };
struct NotSurjectiveError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct OperatorError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// A family member whose self-product vanishes; carries the offending column.
struct NeutralVectorError : Error {
  int index;
  explicit NeutralVectorError(int i)
      : Error("family has a neutral vector at column " + std::to_string(i)),
        index(i) {}
};

}  // namespace jframe
