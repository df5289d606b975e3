#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "bragg/demod.hpp"
#include "bragg/reflection.hpp"
#include "bragg/spectrum.hpp"
#include "bragg/sweep.hpp"

namespace bragg {

// Shortest round-trippable decimal representation; locale-independent, so
// identical runs produce byte-identical files.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

inline void write_reflection_csv(const std::string& path, const ComplexReflection& r) {
    auto out = open_output(path);
    out << "detuning_rad_s,re_r,im_r\n";
    for (std::size_t i = 0; i < r.detunings.size(); ++i)
        out << format_double(r.detunings[i]) << ',' << format_double(r.values[i].real()) << ','
            << format_double(r.values[i].imag()) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

inline void write_reflection_polar_csv(const std::string& path, const ComplexReflection& r) {
    auto out = open_output(path);
    out << "detuning_rad_s,abs_r,phase_rad\n";
    for (std::size_t i = 0; i < r.detunings.size(); ++i)
        out << format_double(r.detunings[i]) << ',' << format_double(std::abs(r.values[i])) << ','
            << format_double(std::arg(r.values[i])) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

inline void write_trace_csv(const std::string& path, const BeatTrace& trace) {
    auto out = open_output(path);
    out << "time_s,value,detuning_rad_s\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << format_double(trace.time_at(i)) << ',' << format_double(trace.samples[i]) << ','
            << format_double(trace.detuning_at(i)) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

inline void write_demod_csv(const std::string& path, const DemodResult& d) {
    auto out = open_output(path);
    out << "time_s,u_c,u_s,amplitude,phase_rad\n";
    for (std::size_t i = 0; i < d.time.size(); ++i)
        out << format_double(d.time[i]) << ',' << format_double(d.u_c[i]) << ','
            << format_double(d.u_s[i]) << ',' << format_double(d.amplitude[i]) << ','
            << format_double(d.phase[i]) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

inline void write_spectrum_csv(const std::string& path, const SpectrumEstimate& s) {
    auto out = open_output(path);
    out << "freq_hz,magnitude\n";
    for (std::size_t i = 0; i < s.frequencies.size(); ++i)
        out << format_double(s.frequencies[i]) << ',' << format_double(s.magnitude[i]) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace bragg
