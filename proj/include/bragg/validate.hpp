#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "bragg/beat.hpp"
#include "bragg/broadening.hpp"
#include "bragg/config.hpp"
#include "bragg/demod.hpp"
#include "bragg/lattice.hpp"
#include "bragg/scattering.hpp"
#include "bragg/spectrum.hpp"
#include "bragg/transfer_matrix.hpp"

namespace bragg {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }
};

// Round-trip fidelity of synthesize -> demodulate against the generating
// reflection spectrum, over the central fraction of the scan window.
// Amplitude error is normalized to the peak of the true envelope.
struct ClosureResult {
    double amplitude_nrmse = 0.0;
    double phase_rms = 0.0;
    std::size_t samples_used = 0;
};

inline ClosureResult closure_against_truth(const BeatTrace& trace, const DemodResult& demod,
                                           const ComplexReflection& reflection,
                                           double central_fraction = 0.8) {
    const double ts = trace.sweep.effective_scan_time();
    const double t_lo = 0.5 * (1.0 - central_fraction) * ts;
    const double t_hi = ts - t_lo;
    const double gain = trace.sweep.field_reference * trace.sweep.field_probe;

    // true envelope and unwrapped true phase along the whole valid region,
    // anchored like the demodulated phase
    std::vector<double> true_amp(demod.time.size()), true_phase(demod.time.size());
    for (std::size_t i = 0; i < demod.time.size(); ++i) {
        const auto r = reflection.at(trace.sweep.detuning_at(demod.time[i]));
        true_amp[i] = gain * std::abs(r);
        true_phase[i] = std::arg(r);
    }
    unwrap_inplace(true_phase);

    double peak = 0.0;
    for (std::size_t i = 0; i < demod.time.size(); ++i)
        if (demod.time[i] >= t_lo && demod.time[i] <= t_hi)
            peak = std::max(peak, true_amp[i]);

    ClosureResult res;
    double amp_sq = 0.0, ph_sq = 0.0;
    for (std::size_t i = 0; i < demod.time.size(); ++i) {
        if (demod.time[i] < t_lo || demod.time[i] > t_hi)
            continue;
        const double da = demod.amplitude[i] - true_amp[i];
        const double dp = demod.phase[i] - true_phase[i];
        amp_sq += da * da;
        ph_sq += dp * dp;
        ++res.samples_used;
    }
    if (res.samples_used == 0 || peak <= 0.0)
        throw std::invalid_argument("closure_against_truth: no usable samples in the central window");
    res.amplitude_nrmse = std::sqrt(amp_sq / static_cast<double>(res.samples_used)) / peak;
    res.phase_rms = std::sqrt(ph_sq / static_cast<double>(res.samples_used));
    return res;
}

namespace detail {

inline std::string num(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// Least-squares slope of log(P) vs log(N).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

// Reference-point reproduction, invariants and the two cross-route checks
// (Born vs transfer matrix, synthesize vs demodulate), evaluated on the
// given configuration. Monte-Carlo sizes are capped so the suite stays
// interactive.
inline ValidationReport run_validation(RunConfig cfg) {
    ValidationReport rep;
    auto add = [&rep](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
    };

    try {
        cfg.resolve();
        cfg.validate();
        add("config", true, "all settings valid");
    } catch (const std::exception& e) {
        add("config", false, e.what());
    }

    // fixed-input reproduction checks (independent of the configuration)
    {
        LineSet one = make_line_set({{0.0, two_pi * 1.3e6, 1.0}}, 420.2e-9);
        ScatterInputs in;
        in.incident_intensity = 10.0;
        in.saturation_intensity = 20.0;
        in.illuminated_atoms = 6.25e5;
        in.polarization_angle = 0.5 * pi;
        in.debye_waller = 0.8;
        in.solid_angle = 1.5e-5;
        const auto alpha = lineset_polarizability(0.0, one);
        const auto s = structure_factor(in.illuminated_atoms, 0.0);
        const double p = bragg_power(in, alpha, one, s);
        add("power_reproduction", p > 400e-9 * 0.7 && p < 400e-9 * 1.3,
            "P_s = " + detail::num(p * 1e9) + " nW (expect 400 +- 30%)");

        const double r = reflectivity(100e-12, 10.0, 30e-6, 250e-6);
        add("reflectivity_reproduction", std::abs(r - 0.029) <= 0.003,
            "|r| = " + detail::num(r) + " (expect 0.029 +- 0.003)");

        std::vector<double> atoms, powers;
        for (int i = 0; i <= 20; ++i) {
            const double n_at = 1e3 * std::pow(10.0, 2.0 * i / 20.0);
            in.illuminated_atoms = n_at;
            atoms.push_back(n_at);
            powers.push_back(bragg_power(in, alpha, one, structure_factor(n_at, 0.0)));
        }
        const double slope = detail::loglog_slope(atoms, powers);
        add("quadratic_scaling", std::abs(slope - 2.0) <= 0.01,
            "log-log slope = " + detail::num(slope) + " (expect 2.00 +- 0.01)");
    }

    if (!rep.checks.front().passed)
        return rep; // config-dependent checks need a valid configuration

    const auto lattice = cfg.lattice();
    const auto lines = cfg.lines();

    {
        const double omega = solid_angle(lattice);
        add("solid_angle", std::abs(omega - 1.5e-5) <= 0.05 * 1.5e-5,
            "Omega_s = " + detail::num(omega) + " sr (expect 1.5e-5 +- 5%)");

        const double dkz = 2.0 * lattice.k_brg() * std::cos(lattice.incidence_angle);
        const double fdw = debye_waller(dkz, axial_rms_size(lattice));
        add("debye_waller", fdw > 0.0 && fdw <= 1.0 && std::abs(fdw - 0.82) <= 0.02,
            "f_DW = " + detail::num(fdw) + " (expect 0.82 +- 0.02)");

        const double ld = lamb_dicke_factor(lattice, 0);
        add("lamb_dicke", std::abs(ld - 0.01) <= 0.002,
            "(2n+1) eps/Omega_z = " + detail::num(ld) + " (expect 0.01 +- 20%)");
    }

    // single-line phase law, exact to numerical precision
    {
        const TransitionLine line{0.0, two_pi * 1.3e6, 1.0};
        const double k = lines.wavenumber();
        double worst = 0.0;
        for (int i = -50; i <= 50; ++i) {
            const double d = i * 1e6;
            const auto a = polarizability(d, line, k);
            worst = std::max(worst, std::abs(std::arg(a) - std::atan2(-line.linewidth, 2.0 * d)));
        }
        add("phase_law", worst <= 1e-12, "max |arg alpha - atan2(-G, 2D)| = " + detail::num(worst));
    }

    // spectrum stays a physical reflection (|r| <= 1)
    const std::size_t mc = static_cast<std::size_t>(std::min(cfg.mc_samples, 20000.0));
    try {
        const auto grid = cfg.scan_grid();
        const auto spec = broadened_reflection_spectrum(lines, lattice, cfg.normalization(), grid,
                                                        mc, cfg.mc_seed());
        double peak = 0.0;
        for (const auto& v : spec.values)
            peak = std::max(peak, std::abs(v));
        add("reflection_bound", true, "peak |r| = " + detail::num(peak));
    } catch (const std::exception& e) {
        add("reflection_bound", false, e.what());
    }

    // Born limit vs transfer matrix on the configured stack. The per-plane
    // coupling is the grating's own normalized reflection shared over the
    // illuminated planes, i zeta(Delta) = r(Delta) / N_s, so the stack check
    // runs at the reflectivity the normalization anchors to.
    try {
        const double gamma = two_pi * cfg.linewidth_mhz * 1e6;
        const auto grid =
            detuning_grid(-cfg.stack_span_gamma * gamma, cfg.stack_span_gamma * gamma,
                          static_cast<std::size_t>(cfg.stack_points));
        LayerStack stack;
        stack.n_layers = static_cast<long>(cfg.stack_layers);
        stack.spacing = 0.5 * lattice.lambda_dip;
        stack.areal_density = lattice.density * stack.spacing;
        stack.incidence_angle = lattice.incidence_angle;
        stack.k_brg = lattice.k_brg();
        const double planes = static_cast<double>(illuminated_planes(lattice));
        LatticeConfig coupling_lattice = lattice;
        if (!cfg.use_broadened_coupling)
            coupling_lattice.light_shift_ratio = 0.0;
        const std::size_t n_mc = static_cast<std::size_t>(cfg.coupling_samples);
        const auto table = broadened_reflection_spectrum(lines, coupling_lattice,
                                                         cfg.normalization(), grid, n_mc,
                                                         cfg.mc_seed());
        stack.coupling = [&](double d) {
            const auto r1 = table.at(d) / planes;
            return std::complex<double>(r1.imag(), -r1.real()); // zeta = -i r1
        };
        const double dev = born_equivalence_report(stack, std::span<const double>(grid));
        add("born_equivalence", dev < 1e-3,
            "max relative deviation = " + detail::num(dev) + " (expect < 1e-3)");

        // lossless limit: real coupling conserves |r|^2 + |t|^2
        LayerStack lossless = stack;
        lossless.coupling = [](double) { return std::complex<double>(0.01, 0.0); };
        double worst = 0.0;
        for (double d : {grid.front(), 0.0, grid.back()}) {
            const auto amp = stack_amplitudes(lossless, d);
            worst = std::max(worst, std::abs(std::norm(amp.reflection) +
                                             std::norm(amp.transmission) - 1.0));
        }
        add("energy_conservation", worst <= 1e-9,
            "max ||r|^2+|t|^2 - 1| = " + detail::num(worst) + " (expect <= 1e-9)");
    } catch (const std::exception& e) {
        add("born_equivalence", false, e.what());
    }

    // synthesize -> demodulate closure, noise forced off
    try {
        RunConfig quiet = cfg;
        quiet.laser_linewidth_hz = 0.0;
        quiet.additive_noise_rms = 0.0;
        const auto grid = quiet.scan_grid();
        const auto spec = broadened_reflection_spectrum(lines, lattice, quiet.normalization(),
                                                        grid, mc, quiet.mc_seed());
        const auto trace = synthesize_beat(spec, quiet.sweep());
        const auto dem = demodulate(trace, quiet.demod());
        const auto res = closure_against_truth(trace, dem, spec);
        add("round_trip_closure", res.amplitude_nrmse < 0.01 && res.phase_rms < 0.02,
            "amplitude nrmse = " + detail::num(res.amplitude_nrmse) +
                ", phase rms = " + detail::num(res.phase_rms) + " rad (expect < 0.01, < 0.02)");
    } catch (const std::exception& e) {
        add("round_trip_closure", false, e.what());
    }

    // Doppler identity: constant-r beat peaks at |Dw_i - 2 k_dip v|
    try {
        SweepConfig sw = cfg.sweep();
        sw.noise = NoiseConfig{};
        sw.detuning_start = 0.0;
        sw.detuning_stop = 0.0;
        sw.scan_time = 0.0;
        sw.shape = SweepShape::linear;
        ComplexReflection flat;
        flat.detunings = {-1.0, 1.0};
        flat.values = {{0.1, 0.0}, {0.1, 0.0}};
        const auto trace = synthesize_beat(flat, sw);
        const auto sp = spectrum(trace, cfg.spectrum_window);
        const double expect = std::abs(sw.beat_offset - sw.pump_difference) / two_pi;
        const double peak = peak_frequency(sp);
        add("doppler_identity", std::abs(peak - expect) <= bin_width(sp),
            "peak at " + detail::num(peak) + " Hz (expect " + detail::num(expect) +
                " +- " + detail::num(bin_width(sp)) + ")");
    } catch (const std::exception& e) {
        add("doppler_identity", false, e.what());
    }

    // bit-level determinism for equal seeds
    try {
        const auto grid = detuning_grid(-two_pi * 50e6, two_pi * 50e6, 65);
        const auto a = broadened_reflection_spectrum(lines, lattice, cfg.normalization(), grid,
                                                     2000, cfg.mc_seed());
        const auto b = broadened_reflection_spectrum(lines, lattice, cfg.normalization(), grid,
                                                     2000, cfg.mc_seed());
        bool same = a.values == b.values;
        SweepConfig sw = cfg.sweep();
        sw.noise.laser_linewidth = 100.0;
        sw.noise.additive_rms = 1e-14;
        const auto grid2 = cfg.scan_grid();
        const auto spec = broadened_reflection_spectrum(lines, lattice, cfg.normalization(),
                                                        grid2, 2000, cfg.mc_seed());
        same = same && synthesize_beat(spec, sw).samples == synthesize_beat(spec, sw).samples;
        add("determinism", same, same ? "equal seeds, identical results" : "results differ");
    } catch (const std::exception& e) {
        add("determinism", false, e.what());
    }

    return rep;
}

} // namespace bragg
