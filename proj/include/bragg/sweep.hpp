#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bragg/constants.hpp"

namespace bragg {

// Laser phase noise as a Wiener random walk whose diffusion reproduces the
// given Lorentzian linewidth; additive detector noise is white Gaussian.
struct NoiseConfig {
    double laser_linewidth = 0.0; // Hz
    double additive_rms = 0.0;    // detector units
    std::uint64_t seed = 0;

    void validate() const {
        if (laser_linewidth < 0.0 || additive_rms < 0.0)
            throw std::invalid_argument("NoiseConfig: parameters must be non-negative");
    }

    bool enabled() const { return laser_linewidth > 0.0 || additive_rms > 0.0; }
};

enum class SweepShape { linear, triangle };

inline SweepShape sweep_shape_from_name(const std::string& name) {
    if (name == "linear")
        return SweepShape::linear;
    if (name == "triangle")
        return SweepShape::triangle;
    throw std::invalid_argument("unknown sweep shape '" + name + "' (linear, triangle)");
}

inline std::string sweep_shape_name(SweepShape s) {
    return s == SweepShape::linear ? "linear" : "triangle";
}

// Frequency ramp of the probe/reference pair plus interferometer settings.
// The probe detuning follows the shape over scan_time, then holds at its
// final value for the rest of the record (scan_time = duration by default).
// Field amplitudes are in sqrt(W): E^2 carries power directly, detector
// responsivity is unity.
struct SweepConfig {
    double duration = 1e-3;        // s
    double scan_time = 0.0;        // s; 0 resolves to duration
    double detuning_start = 0.0;   // rad/s
    double detuning_stop = 0.0;    // rad/s
    double sample_rate = 1e6;      // Hz
    double beat_offset = 0.0;      // Delta omega_i, rad/s
    double pump_difference = 0.0;  // omega_+ - omega_-, rad/s
    double lattice_velocity = 0.0; // m/s, = pump_difference / (2 k_dip)
    double field_reference = 0.0;  // E_r0, sqrt(W)
    double field_probe = 0.0;      // E_i0, sqrt(W)
    SweepShape shape = SweepShape::linear;
    NoiseConfig noise;

    // Keeps velocity and pump difference mutually consistent.
    void set_pump_difference(double value, double k_dip) {
        pump_difference = value;
        lattice_velocity = value / (2.0 * k_dip);
    }
    void set_lattice_velocity(double v, double k_dip) {
        lattice_velocity = v;
        pump_difference = 2.0 * k_dip * v;
    }

    double effective_scan_time() const { return scan_time > 0.0 ? scan_time : duration; }

    void validate() const {
        if (duration <= 0.0)
            throw std::invalid_argument("SweepConfig: duration must be positive");
        if (scan_time < 0.0 || effective_scan_time() > duration * (1.0 + 1e-12))
            throw std::invalid_argument("SweepConfig: scan time must lie in (0, duration]");
        if (sample_rate <= 0.0)
            throw std::invalid_argument("SweepConfig: sample rate must be positive");
        const double top = (std::abs(beat_offset) + std::abs(pump_difference)) / two_pi;
        if (sample_rate <= 2.0 * top)
            throw std::invalid_argument("SweepConfig: sample rate violates Nyquist for the beat carriers");
        if (field_reference < 0.0 || field_probe < 0.0)
            throw std::invalid_argument("SweepConfig: field amplitudes must be non-negative");
        noise.validate();
    }

    // Probe detuning at time t.
    double detuning_at(double t) const {
        const double ts = effective_scan_time();
        if (t >= ts)
            return shape == SweepShape::triangle ? detuning_start : detuning_stop;
        const double u = t / ts;
        if (shape == SweepShape::linear)
            return detuning_start + (detuning_stop - detuning_start) * u;
        // triangle: out and back within the scan window
        const double v = u < 0.5 ? 2.0 * u : 2.0 * (1.0 - u);
        return detuning_start + (detuning_stop - detuning_start) * v;
    }

    std::size_t sample_count() const {
        return static_cast<std::size_t>(std::llround(duration * sample_rate));
    }

    double lowest_detuning() const { return std::min(detuning_start, detuning_stop); }
    double highest_detuning() const { return std::max(detuning_start, detuning_stop); }
};

// Uniformly sampled detector record with its sweep metadata.
struct BeatTrace {
    std::vector<double> samples;
    double sample_rate = 0.0;
    SweepConfig sweep;

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t i) const { return static_cast<double>(i) / sample_rate; }
    double detuning_at(std::size_t i) const { return sweep.detuning_at(time_at(i)); }
};

} // namespace bragg
