#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bragg/beat.hpp"
#include "bragg/broadening.hpp"
#include "bragg/config.hpp"
#include "bragg/csv.hpp"
#include "bragg/demod.hpp"
#include "bragg/spectrum.hpp"
#include "bragg/validate.hpp"

namespace bragg {

struct CommandResult {
    std::vector<std::string> files;
};

namespace detail {

inline std::string prepare_out_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + out_dir +
                                 "': " + ec.message());
    return out_dir;
}

inline std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

inline void write_text(const std::string& path, const std::string& text) {
    auto out = open_output(path);
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace detail

// Broadened complex reflection spectrum on the scan grid, plus manifest.
inline CommandResult cmd_spectrum(RunConfig cfg, const std::string& out_dir) {
    cfg.resolve();
    cfg.validate();
    const auto dir = detail::prepare_out_dir(out_dir);
    const auto spec = broadened_reflection_spectrum(
        cfg.lines(), cfg.lattice(), cfg.normalization(), cfg.scan_grid(),
        static_cast<std::size_t>(cfg.mc_samples), cfg.mc_seed());

    CommandResult res;
    auto emit = [&](const std::string& name, auto&& writer) {
        const auto path = detail::join(dir, name);
        writer(path);
        res.files.push_back(path);
    };
    emit("reflection.csv", [&](const std::string& p) { write_reflection_csv(p, spec); });
    emit("reflection_polar.csv",
         [&](const std::string& p) { write_reflection_polar_csv(p, spec); });
    emit("manifest.txt",
         [&](const std::string& p) { detail::write_text(p, manifest_text(cfg, "spectrum")); });
    return res;
}

// Synthesizes the swept heterodyne beat, demodulates it, and reports how
// well the recovered amplitude/phase reproduce the generating r(Delta).
inline CommandResult cmd_heterodyne(RunConfig cfg, const std::string& out_dir) {
    cfg.resolve();
    cfg.validate();
    const auto dir = detail::prepare_out_dir(out_dir);
    const auto spec = broadened_reflection_spectrum(
        cfg.lines(), cfg.lattice(), cfg.normalization(), cfg.scan_grid(),
        static_cast<std::size_t>(cfg.mc_samples), cfg.mc_seed());
    const auto trace = synthesize_beat(spec, cfg.sweep());
    const auto dem = demodulate(trace, cfg.demod());
    const auto closure = closure_against_truth(trace, dem, spec);
    const auto beat_spectrum = spectrum(trace, cfg.spectrum_window);

    std::ostringstream report;
    report << "amplitude_nrmse = " << format_double(closure.amplitude_nrmse) << '\n'
           << "phase_rms_rad = " << format_double(closure.phase_rms) << '\n'
           << "samples_used = " << closure.samples_used << '\n'
           << "noise_enabled = " << (cfg.sweep().noise.enabled() ? "true" : "false") << '\n';

    CommandResult res;
    auto emit = [&](const std::string& name, auto&& writer) {
        const auto path = detail::join(dir, name);
        writer(path);
        res.files.push_back(path);
    };
    emit("trace.csv", [&](const std::string& p) { write_trace_csv(p, trace); });
    emit("demod.csv", [&](const std::string& p) { write_demod_csv(p, dem); });
    emit("beat_spectrum.csv",
         [&](const std::string& p) { write_spectrum_csv(p, beat_spectrum); });
    emit("closure_report.txt", [&](const std::string& p) { detail::write_text(p, report.str()); });
    emit("manifest.txt",
         [&](const std::string& p) { detail::write_text(p, manifest_text(cfg, "heterodyne")); });
    return res;
}

// Moving-lattice run: Fourier spectra of the Doppler tone, the reference
// tone and the Bragg beat.
inline CommandResult cmd_moving(RunConfig cfg, const std::string& out_dir) {
    cfg.resolve();
    cfg.validate();
    const auto dir = detail::prepare_out_dir(out_dir);
    const auto spec = broadened_reflection_spectrum(
        cfg.lines(), cfg.lattice(), cfg.normalization(), cfg.scan_grid(),
        static_cast<std::size_t>(cfg.mc_samples), cfg.mc_seed());
    const auto sweep_cfg = cfg.sweep();
    const auto trace = synthesize_beat(spec, sweep_cfg);
    const auto [doppler_tone, reference_tone] = synthesize_reference_pair(sweep_cfg);

    CommandResult res;
    auto emit = [&](const std::string& name, auto&& writer) {
        const auto path = detail::join(dir, name);
        writer(path);
        res.files.push_back(path);
    };
    emit("spectrum_doppler.csv", [&](const std::string& p) {
        write_spectrum_csv(p, spectrum(doppler_tone, cfg.spectrum_window));
    });
    emit("spectrum_reference.csv", [&](const std::string& p) {
        write_spectrum_csv(p, spectrum(reference_tone, cfg.spectrum_window));
    });
    emit("spectrum_bragg.csv", [&](const std::string& p) {
        write_spectrum_csv(p, spectrum(trace, cfg.spectrum_window));
    });
    emit("manifest.txt",
         [&](const std::string& p) { detail::write_text(p, manifest_text(cfg, "moving")); });
    return res;
}

// Runs the invariant suite and writes the pass/fail report.
inline ValidationReport cmd_validate(RunConfig cfg, const std::string& out_dir) {
    const auto rep = run_validation(cfg);
    const auto dir = detail::prepare_out_dir(out_dir);
    std::ostringstream text;
    for (const auto& c : rep.checks)
        text << (c.passed ? "PASS" : "FAIL") << ' ' << c.name << ": " << c.detail << '\n';
    text << (rep.ok() ? "all checks passed\n" : "some checks failed\n");
    detail::write_text(detail::join(dir, "validation_report.txt"), text.str());
    return rep;
}

} // namespace bragg
