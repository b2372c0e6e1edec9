#pragma once

namespace phonon::constants {

// SI values (CODATA 2018).
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double k_boltzmann = 1.380649e-23;    // J / K
inline constexpr double bohr_radius = 5.29177210903e-11; // m

// cm^6 s^-1 -> m^6 s^-1
inline constexpr double cm6_to_m6 = 1e-12;
// cm^-3 -> m^-3
inline constexpr double per_cm3_to_per_m3 = 1e6;

} // namespace phonon::constants
