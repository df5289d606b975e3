#pragma once

#include <cmath>
#include <stdexcept>

#include "bragg/constants.hpp"

namespace bragg {

// Standing-wave dipole trap plus probe geometry. Lengths in m, energies in J,
// temperature in K, angles in rad (conversion from degrees happens at the
// config boundary only).
struct LatticeConfig {
    double lambda_dip = 0.0;          // trap wavelength
    double lambda_brg = 0.0;          // probe wavelength
    double incidence_angle = 0.0;     // beta_i
    double trap_depth = 0.0;          // U0, J
    double temperature = 0.0;         // K
    double cavity_waist = 0.0;        // w_dip
    double cloud_radius = 0.0;        // w_r, radial cloud size
    double probe_waist = 0.0;         // w_z, probe beam size in the scattering plane
    double n_total = 0.0;             // atoms in the trap
    double illuminated_fraction = 0.0625;
    double axial_trap_frequency = 0.0; // Omega_z, rad/s
    double density = 0.0;             // m^-3
    double light_shift_ratio = 0.0;   // eta, differential shift / trap shift
    double acceptance_angle = 0.0;    // rad, exposed as a constant only

    double k_dip() const { return two_pi / lambda_dip; }
    double k_brg() const { return two_pi / lambda_brg; }

    void validate() const {
        if (lambda_dip <= 0.0 || lambda_brg <= 0.0)
            throw std::invalid_argument("LatticeConfig: wavelengths must be positive");
        if (!(incidence_angle > 0.0 && incidence_angle < 0.5 * pi))
            throw std::invalid_argument("LatticeConfig: incidence angle must be in (0, pi/2)");
        if (trap_depth <= 0.0 || temperature <= 0.0)
            throw std::invalid_argument("LatticeConfig: trap depth and temperature must be positive");
        if (cavity_waist <= 0.0 || cloud_radius <= 0.0 || probe_waist <= 0.0)
            throw std::invalid_argument("LatticeConfig: waists must be positive");
        if (n_total < 0.0)
            throw std::invalid_argument("LatticeConfig: atom number must be non-negative");
        if (!(illuminated_fraction > 0.0 && illuminated_fraction <= 1.0))
            throw std::invalid_argument("LatticeConfig: illuminated fraction must be in (0, 1]");
        if (axial_trap_frequency <= 0.0)
            throw std::invalid_argument("LatticeConfig: axial trap frequency must be positive");
        if (density <= 0.0)
            throw std::invalid_argument("LatticeConfig: density must be positive");
        if (light_shift_ratio < 0.0)
            throw std::invalid_argument("LatticeConfig: light shift ratio must be non-negative");
    }
};

// Phase error per lattice period, 2 k_brg (lambda_dip/2) cos(beta_i) - 2 pi.
// Zero exactly when lambda_dip cos(beta_i) = lambda_brg.
inline double bragg_mismatch(const LatticeConfig& cfg) {
    return cfg.k_brg() * cfg.lambda_dip * std::cos(cfg.incidence_angle) - two_pi;
}

// Far-field solid angle of the scattered beam, 2 lambda^2 / (pi w_r w_z);
// the illuminated grating acts as a point source with two divergences.
inline double solid_angle(const LatticeConfig& cfg) {
    if (cfg.cloud_radius <= 0.0 || cfg.probe_waist <= 0.0)
        throw std::invalid_argument("solid_angle: waists must be positive");
    return 2.0 * cfg.lambda_brg * cfg.lambda_brg / (pi * cfg.cloud_radius * cfg.probe_waist);
}

// rms spread about a lattice site in the harmonic approximation of the
// axial wells: z = (1/k_dip) sqrt(kB T / 2 U0).
inline double axial_rms_size(const LatticeConfig& cfg) {
    if (cfg.trap_depth <= 0.0 || cfg.temperature <= 0.0)
        throw std::invalid_argument("axial_rms_size: U0 and T must be positive");
    return std::sqrt(k_boltzmann * cfg.temperature / (2.0 * cfg.trap_depth)) / cfg.k_dip();
}

// Recoil frequency of the probe transition for 85Rb, hbar k^2 / 2m.
inline double recoil_frequency(const LatticeConfig& cfg) {
    const double k = cfg.k_brg();
    return hbar * k * k / (2.0 * rb85_mass);
}

// (2 n_z + 1) eps / Omega_z: fraction of scattering events that change the
// axial vibrational state. Small value = deep in the Lamb-Dicke regime.
inline double lamb_dicke_factor(const LatticeConfig& cfg, int n_z = 0) {
    if (cfg.axial_trap_frequency <= 0.0)
        throw std::invalid_argument("lamb_dicke_factor: Omega_z must be positive");
    if (n_z < 0)
        throw std::invalid_argument("lamb_dicke_factor: n_z must be non-negative");
    return (2.0 * n_z + 1.0) * recoil_frequency(cfg) / cfg.axial_trap_frequency;
}

// 2 w_r / (lambda_dip tan beta_i) before rounding; used by the scaling
// property tests, and rounded by effective_layers below.
inline double effective_layers_exact(const LatticeConfig& cfg) {
    if (!(cfg.incidence_angle > 0.0 && cfg.incidence_angle < 0.5 * pi))
        throw std::invalid_argument("effective_layers: incidence angle must be in (0, pi/2)");
    return 2.0 * cfg.cloud_radius / (cfg.lambda_dip * std::tan(cfg.incidence_angle));
}

// Number of lattice planes that can take part in multiple scattering,
// limited by the radial size of the illuminated layers.
inline long effective_layers(const LatticeConfig& cfg) {
    return std::lround(effective_layers_exact(cfg));
}

// Atoms actually hit by the probe beam.
inline long illuminated_atoms(const LatticeConfig& cfg) {
    if (cfg.n_total < 0.0)
        throw std::invalid_argument("illuminated_atoms: atom number must be non-negative");
    return std::lround(cfg.n_total * cfg.illuminated_fraction);
}

// Lattice planes covered by the probe beam along the lattice axis,
// N_s = w_z / (lambda_dip/2); ~630 for the default geometry.
inline long illuminated_planes(const LatticeConfig& cfg) {
    if (cfg.probe_waist <= 0.0 || cfg.lambda_dip <= 0.0)
        throw std::invalid_argument("illuminated_planes: sizes must be positive");
    return std::lround(cfg.probe_waist / (0.5 * cfg.lambda_dip));
}

} // namespace bragg
