#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace bragg {

// Complex amplitude reflection coefficient r(Delta) sampled over detuning.
// Grid strictly increasing, |r| <= 1 everywhere (a grating cannot reflect
// more than it receives).
struct ComplexReflection {
    std::vector<double> detunings;              // rad/s
    std::vector<std::complex<double>> values;   // dimensionless

    void validate() const {
        if (detunings.empty() || detunings.size() != values.size())
            throw std::invalid_argument("ComplexReflection: arrays must be non-empty and equal length");
        for (std::size_t i = 1; i < detunings.size(); ++i)
            if (!(detunings[i - 1] < detunings[i]))
                throw std::invalid_argument("ComplexReflection: detunings must be strictly increasing");
        for (const auto& v : values)
            if (!(std::abs(v) <= 1.0 + 1e-9))
                throw std::domain_error("ComplexReflection: |r| > 1 is unphysical");
    }

    bool covers(double lo, double hi) const {
        return !detunings.empty() && detunings.front() <= lo && hi <= detunings.back();
    }

    // Linear interpolation of the complex spectrum (real and imaginary
    // parts independently). Throws outside the sampled grid.
    std::complex<double> at(double delta) const {
        if (detunings.empty())
            throw std::invalid_argument("ComplexReflection: empty grid");
        if (delta < detunings.front() || delta > detunings.back())
            throw std::out_of_range("ComplexReflection: detuning outside sampled grid");
        auto it = std::upper_bound(detunings.begin(), detunings.end(), delta);
        if (it == detunings.begin())
            return values.front();
        if (it == detunings.end())
            return values.back();
        const std::size_t hi = static_cast<std::size_t>(it - detunings.begin());
        const std::size_t lo = hi - 1;
        const double t = (delta - detunings[lo]) / (detunings[hi] - detunings[lo]);
        return values[lo] + t * (values[hi] - values[lo]);
    }
};

// Uniform detuning grid, inclusive of both ends.
inline std::vector<double> detuning_grid(double start, double stop, std::size_t points) {
    if (points < 2)
        throw std::invalid_argument("detuning_grid: need at least two points");
    if (!(start < stop))
        throw std::invalid_argument("detuning_grid: start must be below stop");
    std::vector<double> grid(points);
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = start + step * static_cast<double>(i);
    grid.back() = stop;
    return grid;
}

} // namespace bragg
