#pragma once

#include <stdexcept>

namespace ringwell {

// A parameter fell outside its mathematical domain (sizes, angles, depths,
// window bounds).  The CLI maps this family to exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure failed on otherwise admissible input.  The CLI maps
// this family to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// theta lies within tolerance of a dominance threshold, where two transform
// eigenvalues tie and the limit shape is not unique.
class AmbiguousDominanceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The overlap matrix has an eigenvalue at or below the positivity floor:
// the basis is overcomplete or too ill-conditioned to whiten.
class OvercompleteBasisError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Piecewise wavefunction fails value/derivative matching at a junction,
// i.e. the supplied energy is not a root of the matching condition.
class ContinuityError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The rotation-parameter equations have no usable real solution
// (degenerate or vanishing couplings).
class NoRealSolutionError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Adaptive quadrature exhausted its subdivision budget above tolerance.
class IntegrationError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Basis construction found no bound state to translate around the ring.
class EmptyBasisError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace ringwell
