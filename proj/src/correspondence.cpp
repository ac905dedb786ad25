#include "ringwell/correspondence.hpp"

#include <cmath>
#include <sstream>

#include "ringwell/constants.hpp"
#include "ringwell/polygon_transform.hpp"

namespace ringwell {

TargetEntries target_entries(double theta, double lambda) {
  const TransformParams params(theta, lambda);  // validates the open domain
  const double t = std::tan(theta);
  const double om = 1.0 - lambda;
  const double w1 = om * om + 2.0 * om * om * t * t + lambda * lambda;
  const Complex w2(lambda - lambda * lambda - om * om * t * t, om * t);

  // The same entries via w itself; the two routes must agree to roundoff.
  const Complex w = params.w();
  const double w1_complex = std::norm(1.0 - w) + std::norm(w);
  const Complex w2_complex = w * (1.0 - std::conj(w));
  const double scale = std::max(1.0, std::abs(w1));
  if (std::abs(w1 - w1_complex) > 1e-12 * scale ||
      std::abs(w2 - w2_complex) > 1e-12 * scale)
    throw NumericError(
        "target-entry consistency check failed between the expanded and "
        "complex forms");
  return {w1, w2};
}

double shift_T(double h11_raw, double theta, double lambda) {
  if (!std::isfinite(h11_raw)) throw DomainError("H11 must be finite");
  return target_entries(theta, lambda).w1 - h11_raw;
}

double theta_from_diagonal(double h_diag, double lambda) {
  if (!std::isfinite(h_diag)) throw DomainError("diagonal must be finite");
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw DomainError("lambda must lie in the open interval (0, 1)");
  const double om = 1.0 - lambda;
  const double minimum = om * om + lambda * lambda;  // theta -> 0 limit
  const double radicand = (h_diag - minimum) / (2.0 * om * om);
  if (radicand < 0.0) {
    std::ostringstream msg;
    msg << "diagonal " << h_diag << " lies below the minimum " << minimum
        << " attainable at lambda = " << lambda << ": no real angle";
    throw DomainError(msg.str());
  }
  return std::atan(std::sqrt(radicand));
}

RotationParams rotation_params(const Complex& w2, double h11, double h12) {
  if (!std::isfinite(w2.real()) || !std::isfinite(w2.imag()) ||
      !std::isfinite(h11) || !std::isfinite(h12))
    throw DomainError("rotation inputs must be finite");
  if (h11 == 0.0 || h12 == 0.0)
    throw NoRealSolutionError(
        "rotation undefined: H11 and H12 must both be nonzero");
  const double q = w2.real() / (4.0 * h12);   // (alpha^2 - beta^2) / 2
  const double p = w2.imag() / (2.0 * h11);   // alpha beta
  const double root = std::hypot(q, p);
  const double alpha_sq = q + root;  // >= 0 always; > 0 unless p = 0, q <= 0
  if (!(alpha_sq > 0.0)) {
    std::ostringstream msg;
    msg << "rotation degenerates to alpha = 0 (Re W2 / H12 = " << 4.0 * q
        << ", Im W2 / H11 = " << 2.0 * p << "): no real solution";
    throw NoRealSolutionError(msg.str());
  }
  const double alpha = std::sqrt(alpha_sq);
  const double beta = p / alpha;

  // Both defining relations hold exactly by construction; a failed check
  // here means the arithmetic itself broke down.
  const double scale = std::max({1.0, std::abs(q), std::abs(p)});
  if (std::abs(alpha * alpha - beta * beta - 2.0 * q) > 1e-10 * scale ||
      std::abs(alpha * beta - p) > 1e-10 * scale)
    throw NumericError("rotation parameters failed their defining relations");
  return {alpha, beta};
}

std::pair<Complex, Complex> rotated_offdiagonals(double alpha, double beta,
                                                 const Eigen::Matrix2d& block) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) ||
      !block.allFinite())
    throw DomainError("rotated_offdiagonals inputs must be finite");
  const double trace = block(0, 0) + block(1, 1);
  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  const Complex cross(0.0, alpha * beta * trace);
  return {Complex(a2 * block(0, 1) - b2 * block(1, 0), 0.0) - cross,
          Complex(a2 * block(1, 0) - b2 * block(0, 1), 0.0) + cross};
}

CorrespondenceResult correspondence_from_raw(double theta, double lambda,
                                             double h11, double h12) {
  const TargetEntries target = target_entries(theta, lambda);
  const RotationParams rotation = rotation_params(target.w2, h11, h12);

  // Closure: rotating the local 2x2 block must land the sub-diagonal
  // exactly on W2 (and the super-diagonal on its conjugate).  On the ring
  // every site couples to two neighbors, so the block's off-diagonal
  // carries the summed coupling 2 H12 -- the factor the defining relations
  // divide back out.
  Eigen::Matrix2d block;
  block << h11, 2.0 * h12, 2.0 * h12, h11;
  const auto [h12_rot, h21_rot] =
      rotated_offdiagonals(rotation.alpha, rotation.beta, block);
  const double scale = std::max(1.0, std::abs(target.w2));
  if (std::abs(h21_rot - target.w2) > 1e-10 * scale ||
      std::abs(h12_rot - std::conj(target.w2)) > 1e-10 * scale)
    throw NumericError("rotation closure check failed: rotated off-diagonals "
                       "do not reproduce W2");

  return {theta,
          lambda,
          target.w1,
          target.w2,
          h11,
          h12,
          target.w1 - h11,
          rotation.alpha,
          rotation.beta,
          true};
}

CorrespondenceResult full_correspondence(double theta, double lambda,
                                         const RingMatrices& ring) {
  const int n = static_cast<int>(ring.hamiltonian.rows());
  if (n < 3 || ring.hamiltonian.cols() != n || ring.overlap.rows() != n ||
      ring.overlap.cols() != n)
    throw DomainError("correspondence requires square ring matrices, n >= 3");

  const double scale =
      std::max(1.0, ring.hamiltonian.cwiseAbs().maxCoeff());
  if (circulant_deviation(ring.hamiltonian) > 1e-8 * scale ||
      circulant_deviation(ring.overlap) > 1e-8 * scale)
    throw DomainError("correspondence requires circulant ring matrices");

  for (int mu = 0; mu < n; ++mu) {
    if (std::abs(ring.overlap(mu, mu) - Complex(1.0, 0.0)) > 1e-8)
      throw DomainError(
          "correspondence requires a unit-diagonal (normalized) overlap");
    for (int nu = 0; nu < n; ++nu) {
      const int d = std::abs(mu - nu);
      const Complex entry = ring.hamiltonian(mu, nu);
      if (std::min(d, n - d) > 1) {
        if (std::abs(entry) > 1e-8 * scale)
          throw DomainError(
              "correspondence requires nearest-neighbor (tridiagonal "
              "circulant) matrices; truncate first");
      } else if (std::abs(entry.imag()) > 1e-10 * scale) {
        throw DomainError(
            "correspondence requires real diagonal and couplings");
      }
    }
  }

  // The two-neighbor closure block assumes equal couplings both ways
  // around; a circulant can still have c_1 != c_{n-1}.
  if (std::abs(ring.hamiltonian(0, 1) - ring.hamiltonian(0, n - 1)) >
      1e-8 * scale)
    throw DomainError(
        "correspondence requires symmetric neighbor couplings");

  return correspondence_from_raw(theta, lambda,
                                 ring.hamiltonian(0, 0).real(),
                                 ring.hamiltonian(0, 1).real());
}

}  // namespace ringwell
