#include "ringwell/quantum_well.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "ringwell/quadrature.hpp"

namespace ringwell {
namespace {

// Parity-resolved residuals sharing the determinant's zero set.  Written
// with tanh instead of tan/cot so neither form has poles or overflow:
//   even:  k sin(kL/2) - kappa cos(kL/2) tanh(kappa (l-L)/2)
//   odd:   k cos(kL/2) tanh(kappa (l-L)/2) + kappa sin(kL/2)
// The expanded determinant factors as 8 e^{-kappa l} * f_even * f_odd, and
// the two residuals cannot vanish simultaneously (their defining relations
// would force tan * cot = -kappa^2 tanh coth / k^2 < 0 = 1), so the smaller
// magnitude identifies the parity of a root.
struct ParityResiduals {
  double even;
  double odd;
};

ParityResiduals parity_residuals(double k, double kappa, double width,
                                 double circumference) {
  const double s = std::sin(0.5 * k * width);
  const double c = std::cos(0.5 * k * width);
  const double t = std::tanh(0.5 * kappa * (circumference - width));
  return {k * s - kappa * c * t, k * c * t + kappa * s};
}

Wavenumbers wavenumbers_from_offset(double u, const WellGeometry& g) {
  const double scale = inverse_energy_scale(g);
  return {std::sqrt(scale * (u + g.depth)), std::sqrt(scale * (-u))};
}

double expanded_from_wavenumbers(double k, double kappa,
                                 const WellGeometry& g) {
  const double s = std::sin(0.5 * k * g.width);
  const double c = std::cos(0.5 * k * g.width);
  const double e1 = std::exp(-kappa * g.circumference);
  const double e2 = std::exp(kappa * (g.width - 2.0 * g.circumference));
  const double e3 = std::exp(-kappa * g.width);
  const double kk = kappa * k;
  return (4.0 * kk * e1 + 2.0 * kk * e2 + 2.0 * kk * e3) * s * s +
         2.0 * (kappa * kappa - k * k) * (e2 - e3) * s * c +
         (4.0 * kk * e1 - 2.0 * kk * e2 - 2.0 * kk * e3) * c * c;
}

double expanded_from_offset(double u, const WellGeometry& g) {
  const auto [k, kappa] = wavenumbers_from_offset(u, g);
  return expanded_from_wavenumbers(k, kappa, g);
}

double bisect_offset(double lo, double hi, double f_lo,
                     const WellGeometry& g, double tol) {
  // f(hi) has the opposite sign of f_lo by construction of the bracket.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = expanded_from_offset(mid, g);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void collect_brackets(const WellGeometry& g, double lo, double hi, int points,
                      std::vector<std::pair<double, double>>& brackets,
                      std::vector<double>& exact_roots, bool allow_refine,
                      int refine_factor) {
  const double step = (hi - lo) / points;
  std::vector<double> u(points + 1);
  std::vector<double> f(points + 1);
  for (int i = 0; i <= points; ++i) {
    u[i] = lo + step * i;
    f[i] = expanded_from_offset(u[i], g);
  }
  for (int i = 0; i < points; ++i) {
    if (f[i] == 0.0) {
      exact_roots.push_back(u[i]);
      continue;
    }
    if ((f[i] < 0.0) != (f[i + 1] < 0.0)) {
      brackets.emplace_back(u[i], u[i + 1]);
      continue;
    }
    // Near-tangency guard: a local |f| minimum whose fitted parabola dips
    // through zero may hide a root pair between grid points.  Rescan the
    // three-point neighborhood at higher density (once).
    if (allow_refine && i >= 1 && std::abs(f[i]) < std::abs(f[i - 1]) &&
        std::abs(f[i]) < std::abs(f[i + 1]) &&
        (f[i - 1] < 0.0) == (f[i] < 0.0)) {
      const double a = 0.5 * (f[i - 1] + f[i + 1]) - f[i];
      const double b = 0.5 * (f[i + 1] - f[i - 1]);
      if (a != 0.0) {
        const double vertex = -b / (2.0 * a);
        const double value = f[i] + b * vertex + a * vertex * vertex;
        if (std::abs(vertex) <= 1.0 && value * f[i] <= 0.0 &&
            value != f[i]) {
          collect_brackets(g, u[i - 1], u[i + 1], 2 * refine_factor, brackets,
                           exact_roots, false, refine_factor);
        }
      }
    }
  }
  if (f[points] == 0.0) exact_roots.push_back(u[points]);
}

}  // namespace

void WellGeometry::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(width) || !finite(circumference) || !finite(depth) ||
      !finite(shift) || !finite(mass) || !finite(hbar))
    throw DomainError("well geometry contains a non-finite value");
  if (!(width > 0.0)) throw DomainError("well width must be positive");
  if (!(circumference > width))
    throw DomainError("circumference must exceed the well width");
  if (!(depth > 0.0)) throw DomainError("well depth must be positive");
  if (!(shift >= 0.0)) throw DomainError("shift must be non-negative");
  if (!(mass > 0.0) || !(hbar > 0.0))
    throw DomainError("mass and hbar must be positive");
}

double inverse_energy_scale(const WellGeometry& g) {
  g.validate();
  // 2m/hbar^2, converted J -> meV and 1/m^2 -> 1/nm^2.
  const double mev = constants::kJoulePerEv * 1e-3;
  return 2.0 * g.mass * mev / (g.hbar * g.hbar) * 1e-18;
}

double compute_C0(const WellGeometry& g) {
  return inverse_energy_scale(g) * g.depth;
}

Wavenumbers wavenumbers(double energy, const WellGeometry& g) {
  g.validate();
  const double u = energy - g.shift;
  if (!(u > -g.depth)) {
    std::ostringstream msg;
    msg << "energy " << energy << " meV is at or below the well floor "
        << (g.shift - g.depth) << " meV";
    throw DomainError(msg.str());
  }
  if (!(u < 0.0)) {
    std::ostringstream msg;
    msg << "energy " << energy << " meV is at or above the barrier top "
        << g.shift << " meV (not a bound state)";
    throw DomainError(msg.str());
  }
  return wavenumbers_from_offset(u, g);
}

double determinant_condition(double energy, const WellGeometry& g) {
  const auto [k, kappa] = wavenumbers(energy, g);
  const double h = 0.5 * g.width;
  const double l = g.circumference;
  const double s = std::sin(k * h);
  const double c = std::cos(k * h);
  Eigen::Matrix4d m;
  m << std::exp(-kappa * (l - h)), std::exp(-kappa * h), c, -s,
      -kappa * std::exp(-kappa * (l - h)), kappa * std::exp(-kappa * h),
      k * s, k * c,
      std::exp(-kappa * h), std::exp(kappa * (h - l)), c, s,
      -kappa * std::exp(-kappa * h), kappa * std::exp(kappa * (h - l)),
      -k * s, k * c;
  return m.determinant();
}

double expanded_condition(double energy, const WellGeometry& g) {
  const auto [k, kappa] = wavenumbers(energy, g);
  return expanded_from_wavenumbers(k, kappa, g);
}

std::vector<BoundState> find_bound_states(const WellGeometry& g,
                                          int count_limit,
                                          const RootSearchOptions& options) {
  g.validate();
  if (options.grid_points < 2)
    throw DomainError("root search grid needs at least 2 points");
  if (!(options.energy_tol > 0.0))
    throw DomainError("root search energy tolerance must be > 0");
  if (count_limit == 0) return {};

  // Work in u = W - V' on (-V0, 0): every quantity below depends on the
  // shift only through the final W = V' + u, so a shifted well reproduces
  // the unshifted wavenumbers and amplitudes bit for bit.
  const double margin = g.depth * 1e-9;
  std::vector<std::pair<double, double>> brackets;
  std::vector<double> roots;
  collect_brackets(g, -g.depth + margin, -margin, options.grid_points,
                   brackets, roots, true, options.refine_factor);
  for (const auto& [lo, hi] : brackets)
    roots.push_back(bisect_offset(lo, hi, expanded_from_offset(lo, g), g,
                                  options.energy_tol));

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double a, double b) {
                            return std::abs(a - b) < 4.0 * options.energy_tol;
                          }),
              roots.end());

  std::vector<BoundState> states;
  for (double u : roots) {
    const auto [k, kappa] = wavenumbers_from_offset(u, g);
    const ParityResiduals r =
        parity_residuals(k, kappa, g.width, g.circumference);
    BoundState state{g.shift + u, k, kappa, 0.0,
                     std::abs(r.even) < std::abs(r.odd)};
    if (state.symmetric)
      state.amplitude = Wavefunction(state, g).amplitude();
    states.push_back(state);
    if (count_limit > 0 && static_cast<int>(states.size()) >= count_limit)
      break;
  }
  return states;
}

Wavefunction::Wavefunction(const BoundState& state, const WellGeometry& g)
    : state_(state), geometry_(g) {
  // Recompute wavenumbers from the energy: the closed-form pieces below are
  // only consistent with each other when (k, kappa) sit exactly on the
  // energy shell.
  const auto [k, kappa] = wavenumbers(state.energy, g);
  k_ = k;
  kappa_ = kappa;

  const double h = 0.5 * g.width;
  exterior_prefactor_ =
      std::cos(k_ * h) / (1.0 + std::exp(kappa_ * (g.width - g.circumference)));

  // Derivative matching at x = L/2 is precisely the even-parity residual;
  // x = -L/2 follows by the construction's symmetry.  Value matching holds
  // identically, so only a genuine even root passes this gate.
  const double interior_slope = -k_ * std::sin(k_ * h);
  const double exterior_slope =
      exterior_prefactor_ * kappa_ *
      (std::exp(kappa_ * (g.width - g.circumference)) - 1.0);
  const double scale = std::max({std::abs(interior_slope),
                                 std::abs(exterior_slope), k_ + kappa_});
  const double mismatch = std::abs(interior_slope - exterior_slope) / scale;
  if (!(mismatch < 1e-8)) {
    std::ostringstream msg;
    msg << "wavefunction derivative mismatch " << mismatch << " at x = L/2: "
        << "energy " << state.energy
        << " meV is not an even matching-condition root";
    throw ContinuityError(msg.str());
  }

  const double domain_end = g.circumference - h;
  const QuadratureResult norm = integrate_piecewise(
      [this](double y) {
        const double v = shape(y);
        return v * v;
      },
      -h, domain_end, {h}, 1e-10);
  if (!(norm.value > 0.0))
    throw NumericError("wavefunction normalization integral is not positive");
  amplitude_ = 1.0 / std::sqrt(norm.value);
  state_.amplitude = amplitude_;
}

double Wavefunction::shape(double y) const {
  const double h = 0.5 * geometry_.width;
  if (y < h) return std::cos(k_ * y);
  return exterior_prefactor_ *
         (std::exp(-kappa_ * (y - h)) +
          std::exp(kappa_ * (y - geometry_.circumference + h)));
}

double Wavefunction::operator()(double x) const {
  const double l = geometry_.circumference;
  const double h = 0.5 * geometry_.width;
  double y = std::fmod(x + h, l);
  if (y < 0.0) y += l;
  y -= h;  // fundamental domain [-L/2, l - L/2)
  return amplitude_ * shape(y);
}

std::array<double, 2> Wavefunction::junctions() const {
  const double h = 0.5 * geometry_.width;
  return {h, geometry_.circumference - h};
}

Wavefunction symmetric_wavefunction(const BoundState& state,
                                    const WellGeometry& g) {
  return Wavefunction(state, g);
}

}  // namespace ringwell
