#pragma once

#include <complex>

#include "bragg/lines.hpp"

namespace bragg {

// Lorentzian complex polarizability of one line, as alpha/epsilon_0 in m^3:
//
//   alpha/eps0 = strength * (6 pi / k^3) * Gamma / (2 Delta' + i Gamma),
//
// with Delta' the detuning from the line center and k the probe wavenumber.
// Finite for every real detuning since Gamma > 0. Far off resonance it
// decays like Gamma/(2 Delta'), phase from 0 to -pi across the resonance.
inline std::complex<double> polarizability(double delta, const TransitionLine& line,
                                           double wavenumber) {
    const double dp = delta - line.center_offset;
    const double k3 = wavenumber * wavenumber * wavenumber;
    const double scale = line.relative_strength * 6.0 * pi / k3;
    return scale * line.linewidth / std::complex<double>(2.0 * dp, line.linewidth);
}

// Sum over all hyperfine components.
inline std::complex<double> lineset_polarizability(double delta, const LineSet& set) {
    const double k = set.wavenumber();
    std::complex<double> sum = 0.0;
    for (const auto& line : set.lines)
        sum += polarizability(delta, line, k);
    return sum;
}

} // namespace bragg
