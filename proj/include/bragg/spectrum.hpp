#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bragg/fft.hpp"
#include "bragg/sweep.hpp"
#include "bragg/window.hpp"

namespace bragg {

// One-sided magnitude spectrum of a windowed, mean-removed trace.
struct SpectrumEstimate {
    std::vector<double> frequencies; // Hz, non-negative, increasing
    std::vector<double> magnitude;
    std::string window_name;
};

inline SpectrumEstimate spectrum(const BeatTrace& trace, const std::string& window_name = "hann") {
    if (trace.samples.empty())
        throw std::invalid_argument("spectrum: empty trace");
    const std::size_t n = trace.size();
    const auto win = make_window(window_name, n);
    const double mean = std::accumulate(trace.samples.begin(), trace.samples.end(), 0.0) /
                        static_cast<double>(n);

    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i)
        buf[i] = (trace.samples[i] - mean) * win[i];
    fft(buf);

    SpectrumEstimate out;
    out.window_name = window_name;
    const std::size_t half = n / 2;
    out.frequencies.resize(half + 1);
    out.magnitude.resize(half + 1);
    const double df = trace.sample_rate / static_cast<double>(n);
    for (std::size_t k = 0; k <= half; ++k) {
        out.frequencies[k] = df * static_cast<double>(k);
        out.magnitude[k] = std::abs(buf[k]);
    }
    return out;
}

// Frequency of the strongest bin.
inline double peak_frequency(const SpectrumEstimate& s) {
    if (s.magnitude.empty())
        throw std::invalid_argument("peak_frequency: empty spectrum");
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.magnitude.size(); ++k)
        if (s.magnitude[k] > s.magnitude[best])
            best = k;
    return s.frequencies[best];
}

inline double bin_width(const SpectrumEstimate& s) {
    if (s.frequencies.size() < 2)
        throw std::invalid_argument("bin_width: spectrum too short");
    return s.frequencies[1] - s.frequencies[0];
}

} // namespace bragg
