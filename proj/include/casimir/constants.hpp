#pragma once

namespace casimir::constants {

// Frozen unit constants (SI). Pinned, not CODATA-latest: the gold-preset
// coefficients shipped with this library were computed against these values
// and change at the 0.1% level if they move.
inline constexpr double hbar = 1.0545e-34; // J s
inline constexpr double k_B  = 1.381e-23;  // J/K
inline constexpr double c    = 2.998e8;    // m/s
inline constexpr double eV   = 1.602e-19;  // J

inline constexpr const char* version = "0.1.0";

// Energy given in eV/meV -> angular frequency in rad/s.
inline constexpr double omega_from_eV(double energy_eV) {
    return energy_eV * eV / hbar;
}
inline constexpr double omega_from_meV(double energy_meV) {
    return energy_meV * 1e-3 * eV / hbar;
}

} // namespace casimir::constants
