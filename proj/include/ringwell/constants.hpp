#pragma once

#include <numbers>

namespace ringwell::constants {

// Free-electron mass (kg) and reduced Planck constant (J s), four-digit
// roundings.  These two, together with the eV below, pin the meV/nm well
// coefficient 2m/hbar^2 used throughout; swapping in full-precision CODATA
// values moves bound-state wavenumbers at the 1e-3 level, so the roundings
// are part of the unit contract, not an approximation to be "fixed".
inline constexpr double kElectronMassKg = 9.109e-31;
inline constexpr double kHbarJs = 1.055e-34;

// One electron volt in joules.
inline constexpr double kJoulePerEv = 1.602e-19;

inline constexpr double kPi = std::numbers::pi;

}  // namespace ringwell::constants
