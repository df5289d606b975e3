#pragma once

// Physical constants (CODATA, 6 significant figures unless exact)
// and the fixed atomic species used throughout: 85Rb.

namespace bragg {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double deg_to_rad = pi / 180.0;

inline constexpr double hbar = 1.05457e-34;            // J s
inline constexpr double k_boltzmann = 1.38065e-23;     // J/K (exact: 1.380649e-23)
inline constexpr double speed_of_light = 299792458.0;  // m/s (exact)
inline constexpr double atomic_mass_unit = 1.66054e-27; // kg

// 85Rb, 84.9118 u
inline constexpr double rb85_mass = 84.9118 * atomic_mass_unit; // kg

} // namespace bragg
