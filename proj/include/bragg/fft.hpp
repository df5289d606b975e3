#pragma once

// Self-contained complex FFT: iterative radix-2 for powers of two and
// Bluestein's chirp-z reduction for everything else. Sizes in this project
// are modest (<= a few hundred thousand samples), so no plan caching.

#include <complex>
#include <stdexcept>
#include <vector>

#include "bragg/constants.hpp"

namespace bragg {
namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? two_pi : -two_pi) / static_cast<double>(len);
        const std::complex<double> wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

inline void fft_bluestein(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    std::size_t m = 1;
    while (m < 2 * n - 1)
        m <<= 1;

    // chirp: w_k = exp(+-i pi k^2 / n), with k^2 mod 2n to keep the
    // trig argument small
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k2 = static_cast<std::size_t>((static_cast<unsigned long long>(k) * k) % (2 * n));
        const double ang = (inverse ? pi : -pi) * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = std::polar(1.0, ang);
    }

    std::vector<std::complex<double>> x(m, 0.0), y(m, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        x[k] = a[k] * chirp[k];
    y[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k)
        y[k] = y[m - k] = std::conj(chirp[k]);

    fft_radix2(x, false);
    fft_radix2(y, false);
    for (std::size_t i = 0; i < m; ++i)
        x[i] *= y[i];
    fft_radix2(x, true);
    const double norm = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k)
        a[k] = x[k] * norm * chirp[k];
}

} // namespace detail

// In-place DFT, X_k = sum_j x_j exp(-2 pi i jk / n). No normalization.
inline void fft(std::vector<std::complex<double>>& a) {
    if (a.empty())
        throw std::invalid_argument("fft: empty input");
    if (detail::is_pow2(a.size()))
        detail::fft_radix2(a, false);
    else
        detail::fft_bluestein(a, false);
}

// In-place inverse DFT including the 1/n factor.
inline void ifft(std::vector<std::complex<double>>& a) {
    if (a.empty())
        throw std::invalid_argument("ifft: empty input");
    if (detail::is_pow2(a.size()))
        detail::fft_radix2(a, true);
    else
        detail::fft_bluestein(a, true);
    const double norm = 1.0 / static_cast<double>(a.size());
    for (auto& v : a)
        v *= norm;
}

} // namespace bragg
