#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "bragg/constants.hpp"
#include "bragg/lines.hpp"

namespace bragg {

// Everything that enters the Bragg-scattered power besides the
// polarizability: drive, geometry and localization factors.
struct ScatterInputs {
    double incident_intensity = 0.0;   // W/m^2
    double saturation_intensity = 0.0; // W/m^2 (diagnostics only)
    double illuminated_atoms = 0.0;    // count, >= 0
    double polarization_angle = 0.0;   // rad, angle between polarization and scattered k
    double debye_waller = 1.0;         // dimensionless, in (0, 1]
    double solid_angle = 0.0;          // sr

    void validate() const {
        // zero drive is a degenerate input (zero power), not an error
        if (incident_intensity < 0.0)
            throw std::invalid_argument("ScatterInputs: incident intensity must be non-negative");
        if (illuminated_atoms < 0.0)
            throw std::invalid_argument("ScatterInputs: atom count must be non-negative");
        if (!(debye_waller > 0.0 && debye_waller <= 1.0))
            throw std::invalid_argument("ScatterInputs: Debye-Waller factor must be in (0, 1]");
        if (!(solid_angle > 0.0 && solid_angle < 4.0 * pi))
            throw std::invalid_argument("ScatterInputs: solid angle must be in (0, 4pi)");
    }
};

// Coherent sum over m = 0..count-1 of exp(i m phase_mismatch).
// Geometric series in closed form; equals count at exact matching.
inline std::complex<double> structure_factor(double count, double phase_mismatch) {
    if (count < 0.0)
        throw std::invalid_argument("structure_factor: count must be non-negative");
    if (count == 0.0)
        return 0.0;
    const double half = 0.5 * phase_mismatch;
    const double denom = std::sin(half);
    if (denom == 0.0)
        return count; // phase_mismatch = 0 mod 2pi, all terms add in phase
    double ratio = std::sin(count * half) / denom;
    // |sin(Mx)| <= M |sin(x)| analytically; rounding in the scaled argument
    // can break that near exact matching, so pin the bound
    ratio = std::clamp(ratio, -count, count);
    return std::polar(ratio, (count - 1.0) * half);
}

// exp(-(delta_kz * z_rms)^2 / 2): thermal position spread about the
// lattice sites along the normal axis reduces coherent scattering.
inline double debye_waller(double delta_kz, double z_rms) {
    if (z_rms < 0.0)
        throw std::invalid_argument("debye_waller: rms size must be non-negative");
    const double x = delta_kz * z_rms;
    return std::exp(-0.5 * x * x);
}

// Power scattered into the solid angle:
//   P = I_i * (pi^2/lambda^4) * |alpha/eps0|^2 * sin^2(xi) * |S|^2 * f_DW^2 * Omega_s
inline double bragg_power(const ScatterInputs& in, std::complex<double> alpha_ratio,
                          const LineSet& set, std::complex<double> structure) {
    if (in.solid_angle <= 0.0)
        throw std::invalid_argument("bragg_power: solid angle must be positive");
    in.validate();
    const double lam = set.reference_wavelength;
    const double lam4 = lam * lam * lam * lam;
    const double sinxi = std::sin(in.polarization_angle);
    return in.incident_intensity * (pi * pi / lam4) * std::norm(alpha_ratio) *
           sinxi * sinxi * std::norm(structure) * in.debye_waller * in.debye_waller *
           in.solid_angle;
}

// Amplitude reflection coefficient |r| = sqrt(P_s / (pi/2 * w_r * w_z * I_i)),
// the denominator being the power incident on the overlap with the cloud.
inline double reflectivity(double scattered_power, double incident_intensity,
                           double cloud_radius, double probe_waist) {
    if (incident_intensity <= 0.0 || cloud_radius <= 0.0 || probe_waist <= 0.0)
        throw std::invalid_argument("reflectivity: intensity and sizes must be positive");
    if (scattered_power < 0.0)
        throw std::invalid_argument("reflectivity: power must be non-negative");
    const double overlap_power = 0.5 * pi * cloud_radius * probe_waist * incident_intensity;
    const double big_r = scattered_power / overlap_power;
    if (big_r > 1.0)
        throw std::domain_error("reflectivity: R > 1, scattered power exceeds incident overlap power");
    return std::sqrt(big_r);
}

// Incoherent (inelastic) scattering rate relative to the elastic rate,
// (I/I_s) / (1 + 4 Delta^2/Gamma^2). Diagnostic only; no dynamics attached.
inline double incoherent_rate_ratio(double incident_intensity, double saturation_intensity,
                                    double detuning, double linewidth) {
    if (saturation_intensity <= 0.0 || linewidth <= 0.0)
        throw std::invalid_argument("incoherent_rate_ratio: I_s and Gamma must be positive");
    const double x = 2.0 * detuning / linewidth;
    return (incident_intensity / saturation_intensity) / (1.0 + x * x);
}

} // namespace bragg
