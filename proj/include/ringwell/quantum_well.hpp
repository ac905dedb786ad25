#pragma once

#include <array>
#include <vector>

#include "ringwell/constants.hpp"
#include "ringwell/errors.hpp"

namespace ringwell {

// One finite square well of width L and depth V0 on a circle of circumference
// l.  The potential floor sits at V' - V0 inside the well and at V' outside;
// bound states live in the open energy window (V' - V0, V').  Lengths in nm,
// energies in meV.
struct WellGeometry {
  double width;          // L
  double circumference;  // l, must exceed L
  double depth;          // V0 > 0
  double shift = 0.0;    // V' >= 0
  double mass = constants::kElectronMassKg;
  double hbar = constants::kHbarJs;

  void validate() const;  // throws DomainError on violations
};

/// 2m/hbar^2 in 1/(meV nm^2): the scale converting energies to squared
/// wavenumbers.
double inverse_energy_scale(const WellGeometry& g);

/// C0 = 2 m V0 / hbar^2 in 1/nm^2.  Every admissible energy satisfies
/// k^2 + kappa^2 = C0.
double compute_C0(const WellGeometry& g);

struct Wavenumbers {
  double k;      // interior oscillation (1/nm)
  double kappa;  // exterior decay (1/nm)
};

/// k = sqrt(2m(W + V0 - V'))/hbar and kappa = sqrt(2m(V' - W))/hbar for W in
/// the open window; DomainError names the violated bound otherwise.
Wavenumbers wavenumbers(double energy, const WellGeometry& g);

/// The 4x4 junction-matching determinant, rows evaluated literally.  Zero
/// exactly at bound-state energies.
double determinant_condition(double energy, const WellGeometry& g);

/// The same determinant expanded and regrouped so every exponential has a
/// non-positive argument; identical zero set, safe for deep/wide geometries.
/// Root scanning uses this form.
double expanded_condition(double energy, const WellGeometry& g);

struct BoundState {
  double energy;     // W (meV)
  double k;          // 1/nm
  double kappa;      // 1/nm
  double amplitude;  // normalization A (1/sqrt(nm)); 0 for antisymmetric
  bool symmetric;    // parity about the well center
};

struct RootSearchOptions {
  int grid_points = 10000;   // bracketing grid across the energy window
  int refine_factor = 10;    // densification of near-tangency rescans
  double energy_tol = 1e-12;  // bisection interval width (meV)
};

/// All matching-condition roots in ascending energy order, classified by
/// parity; symmetric states carry their normalization amplitude.  The search
/// runs in the shift-free variable u = W - V', so results are covariant
/// under shifts by construction.  count_limit < 0 means unlimited.
std::vector<BoundState> find_bound_states(
    const WellGeometry& g, int count_limit = -1,
    const RootSearchOptions& options = {});

/// Normalized symmetric bound-state wavefunction on the circle:
///   psi(x) = A cos(k x)                                     |x| <= L/2,
///   psi(x) = A cos(kL/2)/(1 + e^{kappa(L-l)})
///              (e^{-kappa(x-L/2)} + e^{kappa(x-l+L/2)})     L/2 <= x <= l-L/2,
/// extended l-periodically.  Construction verifies value and derivative
/// matching at the junctions to 1e-8 relative (ContinuityError otherwise --
/// i.e. the energy is not an even root) and fixes A > 0 by adaptive
/// quadrature normalization to 1e-10.
class Wavefunction {
 public:
  Wavefunction(const BoundState& state, const WellGeometry& g);

  /// psi(x) for any real x (periodic wrap).
  double operator()(double x) const;

  double amplitude() const { return amplitude_; }
  const BoundState& state() const { return state_; }
  const WellGeometry& geometry() const { return geometry_; }

  /// Junction abscissae within the fundamental domain [-L/2, l - L/2).
  std::array<double, 2> junctions() const;

 private:
  double shape(double y) const;  // unnormalized, y already wrapped

  BoundState state_;
  WellGeometry geometry_;
  double k_;
  double kappa_;
  double exterior_prefactor_;  // cos(kL/2) / (1 + e^{kappa(L-l)})
  double amplitude_;
};

Wavefunction symmetric_wavefunction(const BoundState& state,
                                    const WellGeometry& g);

}  // namespace ringwell
