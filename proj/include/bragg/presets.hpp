#pragma once

#include <stdexcept>
#include <string>

#include "bragg/config.hpp"

namespace bragg {

// Reflection-spectrum scan: two-line set, default trap, +-100 MHz grid.
inline RunConfig preset_fig2c() {
    RunConfig cfg; // defaults are the spectrum operating point
    return cfg;
}

// Heterodyne sweep at a 5.4 kHz beat. The record is stretched to 20 ms
// (the demod filter needs passband to ~2 kHz with the image at 10.8 kHz
// rejected; a 1 ms record would be mostly filter transient).
inline RunConfig preset_fig3() {
    RunConfig cfg;
    cfg.duration_ms = 20.0;
    cfg.detuning_start_mhz = 40.0;
    cfg.detuning_stop_mhz = -80.0;
    cfg.beat_offset_khz = 5.4;
    cfg.pump_difference_khz = 0.0;
    cfg.carrier_khz = 5.4;
    cfg.lowpass_cutoff_khz = 4.5;
    cfg.filter_taps = 661;
    return cfg;
}

// Moving lattice: pump difference 37 kHz against a 52 kHz beat offset,
// Doppler-shifted Bragg beat at 15 kHz. The sweep crosses both lines in
// the first 4.096 ms and then holds, extending the record to 65.536 ms so
// the spectra resolve to ~15 Hz bins.
inline RunConfig preset_fig4() {
    RunConfig cfg;
    cfg.duration_ms = 65.536;
    cfg.scan_time_ms = 4.096;
    cfg.detuning_start_mhz = 40.0;
    cfg.detuning_stop_mhz = -80.0;
    cfg.beat_offset_khz = 52.0;
    cfg.pump_difference_khz = 37.0;
    cfg.carrier_khz = 52.0;
    cfg.lowpass_cutoff_khz = 13.0;
    cfg.filter_taps = 255;
    return cfg;
}

inline RunConfig preset_by_name(const std::string& name) {
    if (name == "paper-fig2c")
        return preset_fig2c();
    if (name == "paper-fig3")
        return preset_fig3();
    if (name == "paper-fig4")
        return preset_fig4();
    throw std::invalid_argument("unknown preset '" + name +
                                "' (paper-fig2c, paper-fig3, paper-fig4)");
}

} // namespace bragg
