#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bragg/constants.hpp"

namespace bragg {

// One resonance of the probed transition. Offsets are angular frequencies
// relative to a chosen reference line (here: the strongest hyperfine
// component), so a single-line set simply has center_offset = 0.
struct TransitionLine {
    double center_offset = 0.0;     // rad/s
    double linewidth = 0.0;         // rad/s, natural linewidth (FWHM)
    double relative_strength = 1.0; // dimensionless, >= 0
};

struct LineSet {
    std::vector<TransitionLine> lines;
    double reference_wavelength = 0.0; // m

    double wavenumber() const { return two_pi / reference_wavelength; }

    void validate() const {
        if (reference_wavelength <= 0.0)
            throw std::invalid_argument("LineSet: reference wavelength must be positive");
        if (lines.empty())
            throw std::invalid_argument("LineSet: needs at least one line");
        bool any_strength = false;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const auto& ln = lines[i];
            if (ln.linewidth <= 0.0)
                throw std::invalid_argument("LineSet: linewidth must be positive");
            if (ln.relative_strength < 0.0)
                throw std::invalid_argument("LineSet: line strength must be non-negative");
            if (i > 0 && !(lines[i - 1].center_offset < ln.center_offset))
                throw std::invalid_argument("LineSet: line centers must be strictly increasing");
            any_strength = any_strength || ln.relative_strength > 0.0;
        }
        if (!any_strength)
            throw std::invalid_argument("LineSet: at least one line must have strength > 0");
    }
};

// Sorts by center offset and validates.
inline LineSet make_line_set(std::vector<TransitionLine> lines, double reference_wavelength) {
    std::sort(lines.begin(), lines.end(),
              [](const TransitionLine& a, const TransitionLine& b) {
                  return a.center_offset < b.center_offset;
              });
    LineSet set{std::move(lines), reference_wavelength};
    set.validate();
    return set;
}

} // namespace bragg
