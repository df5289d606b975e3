#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bragg/constants.hpp"

namespace bragg {

// Symmetric cosine-sum windows, by name.
inline std::vector<double> make_window(const std::string& name, std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("make_window: empty window");
    std::vector<double> w(n, 1.0);
    if (name == "rect")
        return w;
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = two_pi * static_cast<double>(i) / denom;
        if (name == "hann")
            w[i] = 0.5 - 0.5 * std::cos(x);
        else if (name == "hamming")
            w[i] = 0.54 - 0.46 * std::cos(x);
        else if (name == "blackman")
            w[i] = 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
        else
            throw std::invalid_argument("make_window: unknown window '" + name +
                                        "' (rect, hann, hamming, blackman)");
    }
    return w;
}

} // namespace bragg
