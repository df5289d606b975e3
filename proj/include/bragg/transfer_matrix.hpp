#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bragg/constants.hpp"
#include "bragg/reflection.hpp"

namespace bragg {

// Uniform 1D stack of thin polarizable atomic planes, spaced by half the
// trap wavelength along the lattice axis. The per-layer coupling zeta(Delta)
// comes from the ensemble polarizability and the areal density.
struct LayerStack {
    long n_layers = 1;
    double areal_density = 0.0; // m^-2, sigma = n * spacing
    double spacing = 0.0;       // m
    double incidence_angle = 0.0;
    double k_brg = 0.0;
    std::function<std::complex<double>(double)> coupling; // zeta(Delta)

    double k_z() const { return k_brg * std::cos(incidence_angle); }

    void validate() const {
        if (n_layers < 1)
            throw std::invalid_argument("LayerStack: need at least one layer");
        if (areal_density <= 0.0 || spacing <= 0.0)
            throw std::invalid_argument("LayerStack: density and spacing must be positive");
        if (k_brg <= 0.0)
            throw std::invalid_argument("LayerStack: probe wavenumber must be positive");
        if (!coupling)
            throw std::invalid_argument("LayerStack: coupling not set");
    }
};

// Dimensionless sheet coupling zeta = -(delta_kz/4) sigma (alpha/eps0),
// i.e. half the effective axial wavevector k_z = delta_kz/2 times the
// areal polarizability density. Normalized so a single layer reflects
// i*zeta in the Born limit; the sign makes resonant layers attenuate
// (Im alpha < 0 convention).
inline std::complex<double> layer_coupling(std::complex<double> alpha_ratio, double sigma,
                                           double delta_kz) {
    if (sigma <= 0.0)
        throw std::invalid_argument("layer_coupling: areal density must be positive");
    return -0.25 * delta_kz * sigma * alpha_ratio;
}

namespace detail {

struct Mat2 {
    std::complex<double> a, b, c, d; // [[a, b], [c, d]]

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

// Single sheet with r1 = i zeta / (1 - i zeta), t1 = 1 / (1 - i zeta)
// (t1 = 1 + r1, unit determinant). Transfer matrix in the
// (right-moving, left-moving) amplitude basis.
inline Mat2 layer_matrix(std::complex<double> zeta) {
    const std::complex<double> iz(-zeta.imag(), zeta.real()); // i*zeta
    const std::complex<double> denom = 1.0 - iz;
    if (std::abs(denom) < 1e-12)
        throw std::domain_error("transfer matrix: singular layer, |1 - i zeta| ~ 0");
    return {(1.0 + zeta * zeta) / denom, iz, -iz, denom};
}

inline Mat2 propagation_matrix(double phase) {
    return {std::polar(1.0, phase), 0.0, 0.0, std::polar(1.0, -phase)};
}

} // namespace detail

struct StackAmplitudes {
    std::complex<double> reflection;         // incidence from the left
    std::complex<double> transmission;
    std::complex<double> reflection_reverse; // incidence from the right
};

// Ordered product of per-layer matrices interleaved with free propagation
// over the plane spacing, evaluated at one detuning. Layer and propagation
// matrices are unimodular, so det(total) = 1; computing it as ad - bc would
// cancel catastrophically once the stack response grows.
inline StackAmplitudes stack_amplitudes(const LayerStack& stack, double delta) {
    stack.validate();
    const auto layer = detail::layer_matrix(stack.coupling(delta));
    const auto prop = detail::propagation_matrix(stack.k_z() * stack.spacing);
    detail::Mat2 total = layer;
    for (long m = 1; m < stack.n_layers; ++m)
        total = layer * (prop * total);
    StackAmplitudes out;
    out.reflection = -total.c / total.d;
    out.transmission = 1.0 / total.d;
    out.reflection_reverse = total.b / total.d;
    return out;
}

inline std::vector<std::complex<double>> stack_reflection_raw(const LayerStack& stack,
                                                              std::span<const double> grid) {
    std::vector<std::complex<double>> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out[i] = stack_amplitudes(stack, grid[i]).reflection;
    return out;
}

// Coherent single-scattering sum over the planes: each layer contributes
// its own reflection with the round-trip phase to its depth,
// r_born = r1 * sum_m exp(2 i k_z spacing m).
inline std::vector<std::complex<double>> born_reflection_raw(const LayerStack& stack,
                                                             std::span<const double> grid) {
    stack.validate();
    std::vector<std::complex<double>> out(grid.size());
    const double phase = 2.0 * stack.k_z() * stack.spacing;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto zeta = stack.coupling(grid[i]);
        const std::complex<double> iz(-zeta.imag(), zeta.real());
        const std::complex<double> r1 = iz / (1.0 - iz);
        std::complex<double> sum = 0.0;
        for (long m = 0; m < stack.n_layers; ++m)
            sum += std::polar(1.0, phase * static_cast<double>(m));
        out[i] = r1 * sum;
    }
    return out;
}

inline ComplexReflection stack_reflection(const LayerStack& stack, std::span<const double> grid) {
    if (grid.empty())
        throw std::invalid_argument("stack_reflection: empty grid");
    ComplexReflection out;
    out.detunings.assign(grid.begin(), grid.end());
    out.values = stack_reflection_raw(stack, grid);
    out.validate();
    return out;
}

// max over the grid of |a - b|, relative to the reference peak:
// max_i |a_i - b_i| / max(max_i |b_i|, eps_floor). Normalizing per point
// instead would blow up at the spectral zeros between hyperfine lines.
inline double equivalence_deviation(std::span<const std::complex<double>> a,
                                    std::span<const std::complex<double>> b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("equivalence_deviation: size mismatch or empty");
    constexpr double eps_floor = 1e-15;
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
        peak = std::max(peak, std::abs(b[i]));
    }
    return worst / std::max(peak, eps_floor);
}

// Largest relative deviation between the transfer-matrix result and a
// reference Born spectrum on the reference's own grid.
inline double born_equivalence_report(const LayerStack& stack, const ComplexReflection& born) {
    born.validate();
    if (born.detunings.empty())
        throw std::invalid_argument("born_equivalence_report: empty reference grid");
    const auto matrix = stack_reflection_raw(stack, born.detunings);
    return equivalence_deviation(matrix, born.values);
}

// Both routes computed internally on the same grid.
inline double born_equivalence_report(const LayerStack& stack, std::span<const double> grid) {
    if (grid.empty())
        throw std::invalid_argument("born_equivalence_report: empty grid");
    const auto matrix = stack_reflection_raw(stack, grid);
    const auto born = born_reflection_raw(stack, grid);
    return equivalence_deviation(matrix, born);
}

} // namespace bragg
