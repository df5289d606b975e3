#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bragg/constants.hpp"
#include "bragg/window.hpp"

namespace bragg {

// Linear-phase low-pass: Hamming-windowed sinc, odd tap count, unity DC
// gain. Group delay is exactly (taps-1)/2 samples.
inline std::vector<double> design_lowpass(std::size_t taps, double cutoff, double sample_rate) {
    if (taps < 3 || taps % 2 == 0)
        throw std::invalid_argument("design_lowpass: taps must be odd and >= 3");
    if (!(cutoff > 0.0 && cutoff < pi * sample_rate))
        throw std::invalid_argument("design_lowpass: cutoff must be in (0, Nyquist)");
    const double wc = cutoff / sample_rate; // rad/sample
    const auto win = make_window("hamming", taps);
    const long mid = static_cast<long>(taps - 1) / 2;
    std::vector<double> h(taps);
    double sum = 0.0;
    for (std::size_t i = 0; i < taps; ++i) {
        const long m = static_cast<long>(i) - mid;
        const double v = m == 0 ? wc / pi : std::sin(wc * m) / (pi * m);
        h[i] = v * win[i];
        sum += h[i];
    }
    for (auto& v : h)
        v /= sum;
    return h;
}

// Convolution restricted to fully supported output samples: y[i] for
// i in [half, n - half) aligned with the input (group delay compensated),
// where half = (taps-1)/2. Edge samples are dropped, not zero-padded.
inline std::vector<double> filter_valid(const std::vector<double>& x, const std::vector<double>& h) {
    const std::size_t taps = h.size();
    if (x.size() <= taps)
        throw std::invalid_argument("filter_valid: input shorter than filter");
    const std::size_t half = (taps - 1) / 2;
    std::vector<double> y(x.size() - 2 * half);
    for (std::size_t i = half; i + half < x.size(); ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < taps; ++k)
            acc += h[k] * x[i + half - k];
        y[i - half] = acc;
    }
    return y;
}

} // namespace bragg
