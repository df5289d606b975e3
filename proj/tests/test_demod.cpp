#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "bragg/beat.hpp"
#include "bragg/demod.hpp"
#include "bragg/reflection.hpp"
#include "bragg/validate.hpp"

using namespace bragg;

namespace {

BeatTrace tone_trace(double freq_hz, double duration, double fs, double amplitude = 1.0,
                     double phase = 0.0) {
    BeatTrace t;
    t.sample_rate = fs;
    t.sweep.duration = duration;
    t.sweep.sample_rate = fs;
    const auto n = static_cast<std::size_t>(duration * fs);
    t.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        t.samples[i] = amplitude * std::cos(two_pi * freq_hz * static_cast<double>(i) / fs + phase);
    return t;
}

DemodConfig tone_demod(double freq_hz) {
    DemodConfig d;
    d.carrier = two_pi * freq_hz;
    d.lowpass_cutoff = 0.25 * d.carrier;
    d.filter_taps = 255;
    return d;
}

// single Lorentzian line, |r| <= amp, swept downward across +-span
struct SyntheticLine {
    ComplexReflection reflection;
    SweepConfig sweep;
};

SyntheticLine single_line_sweep(double amp, double gamma, double span, double duration,
                                double carrier_hz) {
    SyntheticLine out;
    out.reflection.detunings = detuning_grid(-1.2 * span, 1.2 * span, 8193);
    out.reflection.values.resize(out.reflection.detunings.size());
    for (std::size_t i = 0; i < out.reflection.detunings.size(); ++i) {
        const double d = out.reflection.detunings[i];
        out.reflection.values[i] = amp * gamma / std::complex<double>(2.0 * d, gamma);
    }
    out.sweep.duration = duration;
    out.sweep.detuning_start = span;
    out.sweep.detuning_stop = -span;
    out.sweep.sample_rate = 1e6;
    out.sweep.beat_offset = two_pi * carrier_hz;
    out.sweep.field_reference = std::sqrt(54e-12);
    out.sweep.field_probe = std::sqrt(54e-12);
    return out;
}

} // namespace

TEST_CASE("a unit tone at the carrier demodulates to amplitude one half") {
    const auto trace = tone_trace(50e3, 10e-3, 1e6);
    const auto res = demodulate(trace, tone_demod(50e3));
    REQUIRE(res.time.size() == trace.size() - 254);
    for (std::size_t i = 100; i + 100 < res.time.size(); i += 97) {
        CHECK(res.amplitude[i] == Catch::Approx(0.5).epsilon(1e-3));
        CHECK(std::abs(res.phase[i]) < 2e-3);
    }
}

TEST_CASE("quadrature identity holds pointwise") {
    const auto trace = tone_trace(50e3, 5e-3, 1e6, 0.8, 0.4);
    const auto res = demodulate(trace, tone_demod(50e3));
    for (std::size_t i = 0; i < res.time.size(); ++i) {
        const double q = res.u_c[i] * res.u_c[i] + res.u_s[i] * res.u_s[i];
        CHECK(std::abs(res.amplitude[i] * res.amplitude[i] - q) <= 1e-12 * std::max(q, 1e-300));
    }
}

TEST_CASE("round trip recovers the generating reflection profile") {
    const double gamma = two_pi * 10e6;
    const auto gen = single_line_sweep(0.4, gamma, 15.0 * gamma, 10e-3, 50e3);
    const auto trace = synthesize_beat(gen.reflection, gen.sweep);
    const auto res = demodulate(trace, tone_demod(50e3));
    const auto closure = closure_against_truth(trace, res, gen.reflection);
    CHECK(closure.amplitude_nrmse < 0.01);
    CHECK(closure.phase_rms < 0.02);
}

TEST_CASE("recovered phase is dispersive and spans about pi") {
    const double gamma = two_pi * 10e6;
    const auto gen = single_line_sweep(0.4, gamma, 15.0 * gamma, 10e-3, 50e3);
    const auto trace = synthesize_beat(gen.reflection, gen.sweep);
    const auto res = demodulate(trace, tone_demod(50e3));

    double lo = 1e300, hi = -1e300;
    for (double p : res.phase) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    CHECK(hi - lo == Catch::Approx(pi).epsilon(0.05));

    // amplitude profile is absorptive: one interior maximum
    std::size_t ipk = 0;
    for (std::size_t i = 0; i < res.amplitude.size(); ++i)
        if (res.amplitude[i] > res.amplitude[ipk])
            ipk = i;
    CHECK(ipk > res.amplitude.size() / 4);
    CHECK(ipk < 3 * res.amplitude.size() / 4);
    CHECK(res.phase[ipk] == Catch::Approx(-0.5 * pi).margin(0.05));
}

TEST_CASE("carrier phase offset rotates the quadratures and shifts the phase") {
    const double gamma = two_pi * 10e6;
    const auto gen = single_line_sweep(0.3, gamma, 12.0 * gamma, 8e-3, 50e3);
    const auto trace = synthesize_beat(gen.reflection, gen.sweep);

    auto cfg = tone_demod(50e3);
    const auto base = demodulate(trace, cfg);
    const double theta = 0.37;
    cfg.carrier_phase = theta;
    const auto shifted = demodulate(trace, cfg);

    for (std::size_t i = 50; i < base.time.size(); i += 211) {
        const double uc = std::cos(theta) * base.u_c[i] - std::sin(theta) * base.u_s[i];
        const double us = std::sin(theta) * base.u_c[i] + std::cos(theta) * base.u_s[i];
        CHECK(shifted.u_c[i] == Catch::Approx(uc).margin(1e-9 * base.amplitude[i]));
        CHECK(shifted.u_s[i] == Catch::Approx(us).margin(1e-9 * base.amplitude[i]));
        CHECK(shifted.amplitude[i] ==
              Catch::Approx(base.amplitude[i]).epsilon(1e-9));
        CHECK(shifted.phase[i] - base.phase[i] == Catch::Approx(-theta).margin(1e-6));
    }
}

TEST_CASE("amplitude is invariant under time reversal of a symmetric trace") {
    const double gamma = two_pi * 10e6;
    const auto gen = single_line_sweep(0.3, gamma, 12.0 * gamma, 8e-3, 50e3);
    auto trace = synthesize_beat(gen.reflection, gen.sweep);
    auto reversed = trace;
    std::reverse(reversed.samples.begin(), reversed.samples.end());

    const auto cfg = tone_demod(50e3);
    const auto fwd = demodulate(trace, cfg);
    const auto bwd = demodulate(reversed, cfg);
    const std::size_t m = fwd.amplitude.size();
    for (std::size_t i = 0; i < m; i += 131)
        CHECK(bwd.amplitude[m - 1 - i] == Catch::Approx(fwd.amplitude[i]).margin(1e-9));
}

TEST_CASE("brick-wall filter variant also closes the round trip") {
    const double gamma = two_pi * 10e6;
    const auto gen = single_line_sweep(0.4, gamma, 15.0 * gamma, 10e-3, 50e3);
    const auto trace = synthesize_beat(gen.reflection, gen.sweep);
    auto cfg = tone_demod(50e3);
    cfg.filter = FilterKind::brickwall;
    cfg.filter_taps = 1001; // trim the wrap-around edges harder
    const auto res = demodulate(trace, cfg);
    const auto closure = closure_against_truth(trace, res, gen.reflection);
    CHECK(closure.amplitude_nrmse < 0.01);
    CHECK(closure.phase_rms < 0.02);
}

TEST_CASE("unwrapped phase has no jumps above pi") {
    const double gamma = two_pi * 5e6;
    const auto gen = single_line_sweep(0.4, gamma, 20.0 * gamma, 10e-3, 50e3);
    const auto trace = synthesize_beat(gen.reflection, gen.sweep);
    const auto res = demodulate(trace, tone_demod(50e3));
    for (std::size_t i = 1; i < res.phase.size(); ++i)
        CHECK(std::abs(res.phase[i] - res.phase[i - 1]) <= pi);
}

TEST_CASE("demodulation rejects invalid settings") {
    const auto trace = tone_trace(50e3, 1e-3, 1e6);
    auto cfg = tone_demod(50e3);
    cfg.filter_taps = 2000;
    CHECK_THROWS_AS(demodulate(trace, cfg), std::invalid_argument);
    cfg = tone_demod(50e3);
    cfg.filter_taps = 256; // even
    CHECK_THROWS_AS(demodulate(trace, cfg), std::invalid_argument);
    cfg = tone_demod(50e3);
    cfg.lowpass_cutoff = cfg.carrier * 2.0;
    CHECK_THROWS_AS(demodulate(trace, cfg), std::invalid_argument);
    cfg = tone_demod(600e3); // beyond Nyquist of 1 MHz sampling
    CHECK_THROWS_AS(demodulate(trace, cfg), std::invalid_argument);
}

TEST_CASE("phase by counting: pure tone leaves no residual") {
    const auto trace = tone_trace(50e3, 10e-3, 1e6);
    const auto res = phase_by_counting(trace, two_pi * 50e3);
    for (std::size_t i = trace.size() / 10; i < trace.size() * 9 / 10; i += 501)
        CHECK(std::abs(res[i]) < 0.05);
}

TEST_CASE("phase by counting: frequency offset accumulates the expected ramp") {
    const auto trace = tone_trace(51e3, 10e-3, 1e6);
    const auto res = phase_by_counting(trace, two_pi * 50e3);
    // 1 kHz above the carrier over 10 ms: 10 extra cycles
    CHECK(res.back() - res.front() == Catch::Approx(two_pi * 10.0).margin(0.5));
}

TEST_CASE("phase by counting agrees with the lock-in recovery") {
    // reflection amplitude at the experiment's few-percent scale; a large
    // |r| would bias the zero crossings through the |r|^2 background term
    const double gamma = two_pi * 10e6;
    const auto gen = single_line_sweep(0.1, gamma, 15.0 * gamma, 10e-3, 50e3);
    const auto trace = synthesize_beat(gen.reflection, gen.sweep);
    const auto counted = phase_by_counting(trace, two_pi * 50e3);
    const auto res = demodulate(trace, tone_demod(50e3));

    double acc = 0.0;
    std::size_t used = 0;
    const std::size_t n = res.time.size();
    for (std::size_t i = n / 10; i < n * 9 / 10; ++i) {
        const double diff = counted[res.first_sample + i] - res.phase[i];
        acc += diff * diff;
        ++used;
    }
    CHECK(std::sqrt(acc / static_cast<double>(used)) < 0.2);
}

TEST_CASE("phase by counting needs an oscillatory trace") {
    BeatTrace flat;
    flat.sample_rate = 1e6;
    flat.samples.assign(1000, 3.0);
    CHECK_THROWS_AS(phase_by_counting(flat, two_pi * 5e3), std::invalid_argument);
}
