#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bragg/fft.hpp"
#include "bragg/fir.hpp"
#include "bragg/sweep.hpp"

namespace bragg {

enum class FilterKind { fir, brickwall };

inline FilterKind filter_kind_from_name(const std::string& name) {
    if (name == "fir")
        return FilterKind::fir;
    if (name == "brickwall")
        return FilterKind::brickwall;
    throw std::invalid_argument("unknown filter kind '" + name + "' (fir, brickwall)");
}

inline std::string filter_kind_name(FilterKind k) {
    return k == FilterKind::fir ? "fir" : "brickwall";
}

struct DemodConfig {
    double carrier = 0.0;        // rad/s
    double carrier_phase = 0.0;  // rad, mixer phase offset
    double lowpass_cutoff = 0.0; // rad/s
    std::size_t filter_taps = 255;
    bool dc_block = true;        // remove the trace mean before mixing
    FilterKind filter = FilterKind::fir;

    void validate() const {
        if (carrier <= 0.0)
            throw std::invalid_argument("DemodConfig: carrier must be positive");
        if (!(lowpass_cutoff > 0.0 && lowpass_cutoff < carrier))
            throw std::invalid_argument("DemodConfig: cutoff must be in (0, carrier)");
        if (filter_taps < 3 || filter_taps % 2 == 0)
            throw std::invalid_argument("DemodConfig: filter taps must be odd and >= 3");
    }
};

// In-phase/quadrature pair with amplitude and unwrapped phase. Arrays cover
// the filter-valid region only; time[] carries the original trace times, so
// everything stays aligned with the input record.
struct DemodResult {
    std::vector<double> time;      // s
    std::vector<double> u_c, u_s;  // detector units
    std::vector<double> amplitude; // sqrt(u_c^2 + u_s^2)
    std::vector<double> phase;     // rad, unwrapped
    std::size_t first_sample = 0;  // trace index of time[0]
};

// +-pi jump correction, anchored at the principal value of the first sample.
inline void unwrap_inplace(std::vector<double>& phase) {
    for (std::size_t i = 1; i < phase.size(); ++i) {
        double d = phase[i] - phase[i - 1];
        while (d > pi) {
            phase[i] -= two_pi;
            d -= two_pi;
        }
        while (d < -pi) {
            phase[i] += two_pi;
            d += two_pi;
        }
    }
}

namespace detail {

// Zero everything above the cutoff in the Fourier domain. Same valid-region
// contract as the FIR path: the first and last (taps-1)/2 samples are
// dropped to keep the two filters interchangeable.
inline std::vector<double> brickwall_lowpass(const std::vector<double>& x, double cutoff,
                                             double sample_rate, std::size_t taps) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> spec(x.begin(), x.end());
    fft(spec);
    const double bin = two_pi * sample_rate / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t mirror = k <= n / 2 ? k : n - k;
        if (static_cast<double>(mirror) * bin > cutoff)
            spec[k] = 0.0;
    }
    ifft(spec);
    const std::size_t half = (taps - 1) / 2;
    std::vector<double> y(n - 2 * half);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = spec[i + half].real();
    return y;
}

} // namespace detail

// Lock-in recovery of the complex beat envelope. Mixing the trace with
// cos/sin of the carrier and low-passing gives
//   u_c = A cos(phi), u_s = -A sin(phi),  A = |r| E_r0 E_i0,
// so amplitude = sqrt(u_c^2 + u_s^2) and phase = atan2(-u_s, u_c). The
// cos*cos mixer gain of 1/2 is left in place (a unit-amplitude tone at the
// carrier demodulates to amplitude 1/2).
inline DemodResult demodulate(const BeatTrace& trace, const DemodConfig& cfg) {
    cfg.validate();
    if (trace.size() <= cfg.filter_taps)
        throw std::invalid_argument("demodulate: trace shorter than filter");
    if (cfg.carrier >= pi * trace.sample_rate)
        throw std::invalid_argument("demodulate: carrier at or above Nyquist");

    const std::size_t n = trace.size();
    double mean = 0.0;
    if (cfg.dc_block)
        mean = std::accumulate(trace.samples.begin(), trace.samples.end(), 0.0) /
               static_cast<double>(n);

    std::vector<double> mix_c(n), mix_s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = trace.time_at(i);
        const double arg = cfg.carrier * t + cfg.carrier_phase;
        const double x = trace.samples[i] - mean;
        mix_c[i] = x * std::cos(arg);
        mix_s[i] = x * std::sin(arg);
    }

    std::vector<double> uc, us;
    if (cfg.filter == FilterKind::fir) {
        const auto h = design_lowpass(cfg.filter_taps, cfg.lowpass_cutoff, trace.sample_rate);
        uc = filter_valid(mix_c, h);
        us = filter_valid(mix_s, h);
    } else {
        uc = detail::brickwall_lowpass(mix_c, cfg.lowpass_cutoff, trace.sample_rate, cfg.filter_taps);
        us = detail::brickwall_lowpass(mix_s, cfg.lowpass_cutoff, trace.sample_rate, cfg.filter_taps);
    }

    DemodResult out;
    out.first_sample = (cfg.filter_taps - 1) / 2;
    const std::size_t m = uc.size();
    out.time.resize(m);
    out.amplitude.resize(m);
    out.phase.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.time[i] = trace.time_at(out.first_sample + i);
        out.amplitude[i] = std::hypot(uc[i], us[i]);
        out.phase[i] = std::atan2(-us[i], uc[i]);
    }
    out.u_c = std::move(uc);
    out.u_s = std::move(us);
    unwrap_inplace(out.phase);
    return out;
}

// Phase profile from counting oscillations: each upward zero crossing of
// the mean-removed trace advances the accumulated phase by 2 pi; the linear
// carrier ramp is subtracted and the residual (relative to the first
// crossing) is held piecewise-constant on the trace timebase.
inline std::vector<double> phase_by_counting(const BeatTrace& trace, double carrier) {
    const std::size_t n = trace.size();
    if (n < 4)
        throw std::invalid_argument("phase_by_counting: trace too short");
    const double mean = std::accumulate(trace.samples.begin(), trace.samples.end(), 0.0) /
                        static_cast<double>(n);

    std::size_t crossings = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = trace.samples[i] - mean;
        const double b = trace.samples[i + 1] - mean;
        if ((a <= 0.0 && b > 0.0) || (a >= 0.0 && b < 0.0))
            ++crossings;
    }
    if (crossings < 3)
        throw std::invalid_argument("phase_by_counting: trace is not oscillatory (< 3 zero crossings)");

    std::vector<double> cross_time;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = trace.samples[i] - mean;
        const double b = trace.samples[i + 1] - mean;
        if (a <= 0.0 && b > 0.0) {
            const double frac = b != a ? -a / (b - a) : 0.0;
            cross_time.push_back(trace.time_at(i) + frac / trace.sample_rate);
        }
    }
    if (cross_time.size() < 2)
        throw std::invalid_argument("phase_by_counting: too few upward crossings");

    std::vector<double> residual(cross_time.size());
    for (std::size_t k = 0; k < cross_time.size(); ++k)
        residual[k] = two_pi * static_cast<double>(k) - carrier * (cross_time[k] - cross_time[0]);

    std::vector<double> out(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = trace.time_at(i);
        while (k + 1 < cross_time.size() && cross_time[k + 1] <= t)
            ++k;
        out[i] = residual[t < cross_time[0] ? 0 : k];
    }
    return out;
}

// Carrier taken from the trace's own sweep settings, Doppler shift included.
inline std::vector<double> phase_by_counting(const BeatTrace& trace) {
    return phase_by_counting(trace, trace.sweep.beat_offset - trace.sweep.pump_difference);
}

} // namespace bragg
