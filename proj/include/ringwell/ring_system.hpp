#pragma once

#include <optional>
#include <vector>

#include "ringwell/circulant.hpp"
#include "ringwell/quantum_well.hpp"

namespace ringwell {

/// n identical wells spaced a = l/n apart on the circle, each carrying a
/// translate of the shared single-well ground state:
/// psi_nu(x) = psi_0(x - nu a), periodic in l by construction.
struct RingBasis {
  WellGeometry geometry;
  int count;       // n
  double spacing;  // a = circumference / n
  Wavefunction ground;

  double psi(int nu, double x) const;

  /// All junction abscissae of all translates, reduced to [0, l): quadrature
  /// panel boundaries for anything integrated against the basis.
  std::vector<double> junction_points() const;
};

/// Solves the single well and replicates its lowest symmetric state around
/// the ring.  Throws EmptyBasisError when the well binds no symmetric state.
RingBasis build_basis(const WellGeometry& geometry, int n);

/// Overlap and Hamiltonian matrices in the translate basis.  Entries are
/// real analytically; they are stored complex and any Hermiticity /
/// circulant structure is measured by tests rather than enforced here.
struct RingMatrices {
  Eigen::MatrixXcd hamiltonian;
  Eigen::MatrixXcd overlap;
};

struct AssemblyOptions {
  double quad_tol = 1e-10;  // absolute tolerance per matrix entry
};

/// S_{mu nu} = <psi_mu | psi_nu> and, via the single-well eigenvalue
/// identity (-hbar^2/2m d^2/dx^2 + V_well) psi_nu = W psi_nu,
///   H_{mu nu} = W S_{mu nu} - V0 sum_{rho != nu} <psi_mu | 1_rho psi_nu>,
/// where 1_rho indicates well rho's interior.  No numerical derivatives.
/// Rows are assembled in parallel; RINGWELL_MAX_WORKERS caps the thread
/// count.
RingMatrices assemble_matrices(const RingBasis& basis,
                               const AssemblyOptions& options = {});

struct TruncationResult {
  RingMatrices matrices;
  double dropped_max;  // largest magnitude zeroed in either matrix
};

/// Zeroes every entry beyond cyclic nearest neighbors in both matrices.
TruncationResult truncate_nearest_neighbor(const RingMatrices& m);

struct RingSolution {
  Eigen::VectorXd energies;       // meV
  Eigen::MatrixXcd coefficients;  // column j: basis coefficients of state j
  bool circulant_path;            // closed form used (Fourier order) or dense
  std::optional<double> cross_check_deviation;  // sorted-spectrum gap between
                                                // the two solver routes
  double max_residual;            // max_j ||H a_j - E_j S a_j||_inf
};

/// Generalized eigensolve H a = E S a.  When both matrices sit within
/// circulant_tol of circulant form, the primary route projects them onto
/// Hermitian circulants and uses the closed form (eigenvectors in Fourier
/// order, uniform superposition first); a dense whitening solve runs either
/// way, as cross-check or as fallback.
RingSolution solve_ring(const RingMatrices& m, double circulant_tol = 1e-8);

}  // namespace ringwell
