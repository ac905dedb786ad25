#pragma once

#include "ringwell/circulant.hpp"
#include "ringwell/ring_system.hpp"

namespace ringwell {

// Matching a nearest-neighbor ring Hamiltonian onto the polygon
// transformation matrix: the target circulant has diagonal W1 and cyclic
// sub-diagonal W2,
//   W1 = (1-lambda)^2 (1 + 2 tan^2 theta) + lambda^2,
//   W2 = w (1 - conj w) = lambda + i(1-lambda)tan(theta)
//          - lambda^2 - (1-lambda)^2 tan^2(theta),
// reached from the (real) raw pair (H11, H12) by an energy shift T of the
// diagonal and a basis rotation psi_2 -> (alpha + i beta) psi_2 of the
// off-diagonals.  The rotated basis is not normalized; callers surface that
// as a warning, not an error.

struct TargetEntries {
  double w1;
  Complex w2;
};

/// W1 and W2 for theta in (0, pi/2), lambda in (0, 1).  Both the expanded
/// real forms and the complex route via w are evaluated and must agree to
/// 1e-12 (internal consistency check).
TargetEntries target_entries(double theta, double lambda);

/// Diagonal shift T with H11 + T = W1.
double shift_T(double h11_raw, double theta, double lambda);

/// Inverts the diagonal formula: theta = atan(sqrt((h - (1-lambda)^2 -
/// lambda^2) / (2 (1-lambda)^2))).  A diagonal below the lambda-minimum
/// raises DomainError; the boundary value maps to theta = 0.
double theta_from_diagonal(double h_diag, double lambda);

struct RotationParams {
  double alpha;
  double beta;
};

/// Solves alpha^2 - beta^2 = Re(W2)/(2 H12), alpha beta = Im(W2)/(2 H11)
/// on the positive-alpha branch.  Vanishing H11 or H12, or a degenerate
/// alpha = 0 solution, raises NoRealSolutionError.
RotationParams rotation_params(const Complex& w2, double h11, double h12);

/// Off-diagonals of the 2x2 block after psi_2 -> (alpha + i beta) psi_2:
///   H12' = alpha^2 H12 - beta^2 H21 - i alpha beta (H11 + H22),
///   H21' = alpha^2 H21 - beta^2 H12 + i alpha beta (H11 + H22).
/// For a real symmetric block these are complex conjugates.
std::pair<Complex, Complex> rotated_offdiagonals(double alpha, double beta,
                                                 const Eigen::Matrix2d& block);

struct CorrespondenceResult {
  double theta;
  double lambda;
  double w1;
  Complex w2;
  double h11_raw;  // ring diagonal before the shift
  double h12_raw;  // ring nearest-neighbor coupling
  double shift;    // T = W1 - H11
  double alpha;
  double beta;
  bool basis_not_normalized;  // always true: the rotation is not unitary
};

/// Full pipeline from a nearest-neighbor ring to the transformation-matrix
/// entries.  Requires circulant matrices with real diagonal/off-diagonal,
/// zero beyond nearest neighbors, and unit-diagonal overlap; verifies the
/// closure H21' = W2 to 1e-10 before returning.
CorrespondenceResult full_correspondence(double theta, double lambda,
                                         const RingMatrices& ring);

/// Same pipeline from a raw (H11, H12) pair directly.
CorrespondenceResult correspondence_from_raw(double theta, double lambda,
                                             double h11, double h12);

}  // namespace ringwell
