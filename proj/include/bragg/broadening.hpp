#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "bragg/lattice.hpp"
#include "bragg/lines.hpp"
#include "bragg/polarizability.hpp"
#include "bragg/reflection.hpp"
#include "bragg/scattering.hpp"

namespace bragg {

// Operating point that pins the overall reflection scale: the unbroadened,
// on-resonance |r| equals reflectivity(reference_peak_power, ...) when the
// illuminated atom number equals reference_atoms, and scales linearly with
// the atom number otherwise (power is quadratic in N, amplitude linear).
struct ReflectionNormalization {
    double incident_intensity = 10.0;    // W/m^2
    double reference_peak_power = 100e-12; // W
    double reference_atoms = 625000.0;   // count
};

// Trap potential above the well bottom at (radius r, axial z within a site):
// harmonic along the lattice axis, Gaussian envelope radially.
inline double trap_potential(const LatticeConfig& cfg, double r, double z) {
    const double kz = cfg.k_dip() * z;
    const double axial = cfg.trap_depth * kz * kz;
    const double rr = 2.0 * r * r / (cfg.cavity_waist * cfg.cavity_waist);
    const double radial = cfg.trap_depth * (1.0 - std::exp(-rr));
    return axial + radial;
}

// Draws potential energies U of atoms Boltzmann-distributed in the trap,
// exp(-U/kB T): axial position Gaussian with the harmonic rms size, radial
// position by inverse-CDF of p(r) dr = r exp(-U_rad(r)/kB T) dr on the
// trapped region r < w_dip.
class BoltzmannEnergySampler {
public:
    BoltzmannEnergySampler(const LatticeConfig& cfg, std::uint64_t seed)
        : cfg_(cfg), engine_(seed), z_rms_(axial_rms_size(cfg)) {
        build_radial_cdf();
    }

    double draw() {
        std::normal_distribution<double> gauss(0.0, z_rms_);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double z = gauss(engine_);
        const double r = radial_from_cdf(uni(engine_));
        return trap_potential(cfg_, r, z);
    }

private:
    void build_radial_cdf() {
        // Tabulated CDF on a fixed grid; resolution well below the thermal
        // radial size for the T ~ 0.2 U0/kB regime.
        const std::size_t n = 4096;
        const double kt = k_boltzmann * cfg_.temperature;
        radius_.resize(n + 1);
        cdf_.resize(n + 1);
        const double dr = cfg_.cavity_waist / static_cast<double>(n);
        double acc = 0.0;
        radius_[0] = 0.0;
        cdf_[0] = 0.0;
        double prev = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            const double r = dr * static_cast<double>(i);
            const double rr = 2.0 * r * r / (cfg_.cavity_waist * cfg_.cavity_waist);
            const double u_rad = cfg_.trap_depth * (1.0 - std::exp(-rr));
            const double w = r * std::exp(-u_rad / kt);
            acc += 0.5 * (prev + w) * dr;
            prev = w;
            radius_[i] = r;
            cdf_[i] = acc;
        }
        for (auto& c : cdf_)
            c /= acc;
    }

    double radial_from_cdf(double u) const {
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.begin())
            return radius_.front();
        if (it == cdf_.end())
            return radius_.back();
        const std::size_t hi = static_cast<std::size_t>(it - cdf_.begin());
        const std::size_t lo = hi - 1;
        const double span = cdf_[hi] - cdf_[lo];
        const double t = span > 0.0 ? (u - cdf_[lo]) / span : 0.0;
        return radius_[lo] + t * (radius_[hi] - radius_[lo]);
    }

    LatticeConfig cfg_;
    std::mt19937_64 engine_;
    double z_rms_;
    std::vector<double> radius_;
    std::vector<double> cdf_;
};

// Light-shift detunings eta * U(x) / hbar for an ensemble of trapped atoms.
inline std::vector<double> sample_light_shifts(const LatticeConfig& cfg, std::size_t samples,
                                               std::uint64_t seed) {
    BoltzmannEnergySampler sampler(cfg, seed);
    std::vector<double> shifts(samples);
    const double scale = cfg.light_shift_ratio / hbar;
    for (auto& s : shifts)
        s = scale * sampler.draw();
    return shifts;
}

// Ensemble-averaged polarizability <alpha(Delta - delta_LS)> over the
// Boltzmann position distribution, in m^3. With light_shift_ratio = 0 the
// average is the bare lineset polarizability, evaluated without sampling.
inline std::vector<std::complex<double>> ensemble_polarizability(
    const LineSet& set, const LatticeConfig& cfg, std::span<const double> grid,
    std::size_t samples, std::uint64_t seed) {
    if (grid.empty())
        throw std::invalid_argument("ensemble_polarizability: empty grid");
    if (samples < 1)
        throw std::invalid_argument("ensemble_polarizability: need at least one sample");
    std::vector<std::complex<double>> out(grid.size());
    if (cfg.light_shift_ratio == 0.0) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = lineset_polarizability(grid[i], set);
        return out;
    }
    const auto shifts = sample_light_shifts(cfg, samples, seed);
    const double k = set.wavenumber();
    const double inv = 1.0 / static_cast<double>(samples);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::complex<double> acc = 0.0;
        for (const double s : shifts) {
            const double d = grid[i] - s;
            for (const auto& line : set.lines)
                acc += polarizability(d, line, k);
        }
        out[i] = acc * inv;
    }
    return out;
}

// Peak of the bare |alpha| over a dense local grid around each line; used
// to anchor the reflection normalization at the unbroadened resonance.
inline double bare_peak_polarizability(const LineSet& set) {
    double peak = 0.0;
    for (const auto& line : set.lines) {
        const double span = 3.0 * line.linewidth;
        for (int i = -300; i <= 300; ++i) {
            const double d = line.center_offset + span * static_cast<double>(i) / 300.0;
            peak = std::max(peak, std::abs(lineset_polarizability(d, set)));
        }
    }
    return peak;
}

// Inhomogeneously broadened complex reflection spectrum. Atom positions are
// drawn from the trap's Boltzmann distribution; each atom responds at a
// detuning displaced by its local light shift, and the coherent sum is the
// ensemble average of the shifted polarizability. Deterministic per seed.
inline ComplexReflection broadened_reflection_spectrum(
    const LineSet& set, const LatticeConfig& cfg, const ReflectionNormalization& norm,
    std::span<const double> grid, std::size_t samples, std::uint64_t seed) {
    if (grid.empty())
        throw std::invalid_argument("broadened_reflection_spectrum: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i - 1] < grid[i]))
            throw std::invalid_argument("broadened_reflection_spectrum: grid must be strictly increasing");
    set.validate();

    const double r_ref = reflectivity(norm.reference_peak_power, norm.incident_intensity,
                                      cfg.cloud_radius, cfg.probe_waist);
    const double atoms = static_cast<double>(illuminated_atoms(cfg));
    const double scale = r_ref * (atoms / norm.reference_atoms) / bare_peak_polarizability(set);

    auto avg = ensemble_polarizability(set, cfg, grid, samples, seed);
    ComplexReflection out;
    out.detunings.assign(grid.begin(), grid.end());
    out.values.resize(avg.size());
    for (std::size_t i = 0; i < avg.size(); ++i)
        out.values[i] = scale * avg[i];
    out.validate();
    return out;
}

// FWHM of |r| around its global peak, by linear interpolation of the
// half-maximum crossings. Requires the peak to be interior to the grid.
inline double profile_fwhm(const ComplexReflection& r) {
    std::size_t ipk = 0;
    double peak = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        const double a = std::abs(r.values[i]);
        if (a > peak) {
            peak = a;
            ipk = i;
        }
    }
    if (peak <= 0.0)
        throw std::invalid_argument("profile_fwhm: flat profile");
    const double half = 0.5 * peak;
    auto cross = [&](std::size_t i, std::size_t j) {
        const double a = std::abs(r.values[i]), b = std::abs(r.values[j]);
        const double t = (half - a) / (b - a);
        return r.detunings[i] + t * (r.detunings[j] - r.detunings[i]);
    };
    double lo = r.detunings.front(), hi = r.detunings.back();
    for (std::size_t i = ipk; i > 0; --i) {
        if (std::abs(r.values[i - 1]) < half && std::abs(r.values[i]) >= half) {
            lo = cross(i - 1, i);
            break;
        }
    }
    for (std::size_t i = ipk; i + 1 < r.values.size(); ++i) {
        if (std::abs(r.values[i]) >= half && std::abs(r.values[i + 1]) < half) {
            hi = cross(i, i + 1);
            break;
        }
    }
    return hi - lo;
}

// Solves for the light-shift ratio eta that gives the requested broadened
// FWHM of a single reference line; bisection on a monotone map.
inline double calibrate_light_shift_ratio(const LineSet& set, LatticeConfig cfg,
                                          double target_fwhm, std::size_t samples,
                                          std::uint64_t seed) {
    const auto grid = detuning_grid(-4.0 * target_fwhm, 4.0 * target_fwhm, 1025);
    auto fwhm_at = [&](double eta) {
        cfg.light_shift_ratio = eta;
        auto avg = ensemble_polarizability(set, cfg, grid, samples, seed);
        ComplexReflection r;
        r.detunings = grid;
        r.values = std::move(avg);
        // raw alpha values; profile_fwhm only uses relative magnitudes
        return profile_fwhm(r);
    };
    double lo = 0.0, hi = 1.0;
    while (fwhm_at(hi) < target_fwhm) {
        hi *= 2.0;
        if (hi > 1e3)
            throw std::runtime_error("calibrate_light_shift_ratio: target width unreachable");
    }
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (fwhm_at(mid) < target_fwhm ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace bragg
