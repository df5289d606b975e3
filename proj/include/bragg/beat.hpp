#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <utility>

#include "bragg/reflection.hpp"
#include "bragg/sweep.hpp"

namespace bragg {

// Heterodyne beat between the Bragg-reflected probe and the reference beam:
//
//   I(t) = E_r0^2 + |r|^2 E_i0^2 + 2 E_r0 E_i0 Re[ r(Delta(t)) e^{i Theta(t)} ],
//
// with carrier phase Theta(t) = (Dw_i - 2 k_dip v) t + phase noise. A moving
// lattice shifts the carrier by the Doppler term 2 k_dip v = w_+ - w_-.
// Deterministic for a fixed noise seed; noise-free when both noise terms
// are zero (no RNG is consumed at all in that case).
inline BeatTrace synthesize_beat(const ComplexReflection& reflection, const SweepConfig& sweep) {
    sweep.validate();
    reflection.validate();
    if (!reflection.covers(sweep.lowest_detuning(), sweep.highest_detuning()))
        throw std::invalid_argument("synthesize_beat: reflection grid does not cover the sweep range");

    BeatTrace trace;
    trace.sample_rate = sweep.sample_rate;
    trace.sweep = sweep;
    const std::size_t n = sweep.sample_count();
    trace.samples.resize(n);

    const double dt = 1.0 / sweep.sample_rate;
    const double carrier = sweep.beat_offset - sweep.pump_difference;
    const double er = sweep.field_reference;
    const double ei = sweep.field_probe;

    std::mt19937_64 engine(sweep.noise.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const bool noisy = sweep.noise.enabled();
    const double phase_step_rms =
        sweep.noise.laser_linewidth > 0.0 ? std::sqrt(two_pi * sweep.noise.laser_linewidth * dt) : 0.0;

    double walk = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        const std::complex<double> r = reflection.at(sweep.detuning_at(t));
        const double a = std::abs(r);
        double theta = carrier * t;
        if (noisy && phase_step_rms > 0.0) {
            theta += walk;
            walk += phase_step_rms * gauss(engine);
        }
        double value = er * er + a * a * ei * ei +
                       2.0 * er * ei * std::real(r * std::polar(1.0, theta));
        if (noisy && sweep.noise.additive_rms > 0.0)
            value += sweep.noise.additive_rms * gauss(engine);
        trace.samples[i] = value;
    }
    return trace;
}

// Auxiliary unit-amplitude tones at the pump difference (Doppler
// interferometer) and at the beat offset (reference interferometer),
// sampled like the main trace for side-by-side spectra.
inline std::pair<BeatTrace, BeatTrace> synthesize_reference_pair(const SweepConfig& sweep) {
    sweep.validate();
    const std::size_t n = sweep.sample_count();
    const double dt = 1.0 / sweep.sample_rate;

    auto tone = [&](double omega) {
        BeatTrace t;
        t.sample_rate = sweep.sample_rate;
        t.sweep = sweep;
        t.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            t.samples[i] = std::cos(omega * static_cast<double>(i) * dt);
        return t;
    };
    return {tone(sweep.pump_difference), tone(sweep.beat_offset)};
}

} // namespace bragg
