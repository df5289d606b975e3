#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bragg/broadening.hpp"
#include "bragg/constants.hpp"
#include "bragg/demod.hpp"
#include "bragg/lattice.hpp"
#include "bragg/lines.hpp"
#include "bragg/sweep.hpp"
#include "bragg/transfer_matrix.hpp"
#include "bragg/version.hpp"

namespace bragg {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Flat, sectioned key-value run configuration. Keys carry their unit in the
// name; all angles are degrees in the file and radians internally. Unknown
// keys and sections are rejected with the offending line number. A value of
// 0 on the keys marked "resolved" means "derive the default"; resolve()
// materializes those, after which serialization round-trips exactly.
struct RunConfig {
    // [run]
    std::uint64_t seed = 12345;
    double mc_samples = 100000;
    std::string out_dir = "out";

    // [lattice]
    double lambda_dip_nm = 792.95091609065637; // Bragg-matched to 420.2 nm at 58 deg
    double lambda_brg_nm = 420.2;
    double beta_i_deg = 58.0;
    double trap_depth_mk = 1.0;
    double temperature_uk = 200.0;
    double cavity_waist_um = 130.0;
    double cloud_radius_um = 30.0;
    double probe_waist_um = 250.0;
    double n_total = 1e7;
    double illuminated_fraction = 0.0625;
    double omega_z_rad_s = 8.3619e6; // from inverting the Lamb-Dicke value 0.01 at n_z = 0
    double density_cm3 = 5e11;
    double light_shift_ratio = 0.887; // calibrated so the default trap broadens one line to ~10 Gamma
    double acceptance_angle_deg = 0.1;

    // [lines]
    double linewidth_mhz = 1.3;
    double splitting_mhz = 40.0;
    double strength_f3 = 1.0;
    double strength_f4 = 3.0;
    double strength_f2 = 0.0;
    double offset_f2_mhz = 0.0; // used only when strength_f2 > 0

    // [scan]
    double scan_start_mhz = -100.0;
    double scan_stop_mhz = 100.0;
    double scan_points = 1024;

    // [sweep]
    double duration_ms = 1.0;
    double scan_time_ms = 0.0; // resolved: duration_ms
    double detuning_start_mhz = 40.0;
    double detuning_stop_mhz = -80.0;
    double sample_rate_hz = 1e6;
    double beat_offset_khz = 5.4;
    double pump_difference_khz = 0.0;
    double power_reference_pw = 54.0;
    double power_probe_pw = 54.0;
    std::string sweep_shape = "linear";
    double laser_linewidth_hz = 0.0;
    double additive_noise_rms = 0.0;

    // [demod]
    double carrier_khz = 0.0;        // resolved: beat_offset_khz
    double lowpass_cutoff_khz = 0.0; // resolved: carrier/4
    double filter_taps = 255;
    bool dc_block = true;
    std::string filter_kind = "fir";
    std::string spectrum_window = "hann";

    // [stack]
    double stack_layers = 0; // resolved: effective_layers(lattice)
    double stack_span_gamma = 20.0;
    double stack_points = 801;
    double coupling_samples = 20000;
    bool use_broadened_coupling = true;

    // [normalization]
    double incident_intensity_w_m2 = 10.0;
    double saturation_intensity_w_m2 = 20.0;
    double reference_peak_power_pw = 100.0;
    double reference_atoms = 625000.0;

    // ---- typed views (SI units, radians) ----

    LatticeConfig lattice() const {
        LatticeConfig c;
        c.lambda_dip = lambda_dip_nm * 1e-9;
        c.lambda_brg = lambda_brg_nm * 1e-9;
        c.incidence_angle = beta_i_deg * deg_to_rad;
        c.trap_depth = trap_depth_mk * 1e-3 * k_boltzmann;
        c.temperature = temperature_uk * 1e-6;
        c.cavity_waist = cavity_waist_um * 1e-6;
        c.cloud_radius = cloud_radius_um * 1e-6;
        c.probe_waist = probe_waist_um * 1e-6;
        c.n_total = n_total;
        c.illuminated_fraction = illuminated_fraction;
        c.axial_trap_frequency = omega_z_rad_s;
        c.density = density_cm3 * 1e6;
        c.light_shift_ratio = light_shift_ratio;
        c.acceptance_angle = acceptance_angle_deg * deg_to_rad;
        return c;
    }

    LineSet lines() const {
        std::vector<TransitionLine> ls;
        const double gamma = two_pi * linewidth_mhz * 1e6;
        ls.push_back({-two_pi * splitting_mhz * 1e6, gamma, strength_f3});
        ls.push_back({0.0, gamma, strength_f4});
        if (strength_f2 > 0.0)
            ls.push_back({two_pi * offset_f2_mhz * 1e6, gamma, strength_f2});
        return make_line_set(std::move(ls), lambda_brg_nm * 1e-9);
    }

    SweepConfig sweep() const {
        SweepConfig s;
        s.duration = duration_ms * 1e-3;
        s.scan_time = scan_time_ms * 1e-3;
        s.detuning_start = two_pi * detuning_start_mhz * 1e6;
        s.detuning_stop = two_pi * detuning_stop_mhz * 1e6;
        s.sample_rate = sample_rate_hz;
        s.beat_offset = two_pi * beat_offset_khz * 1e3;
        s.set_pump_difference(two_pi * pump_difference_khz * 1e3, lattice().k_dip());
        s.field_reference = std::sqrt(power_reference_pw * 1e-12);
        s.field_probe = std::sqrt(power_probe_pw * 1e-12);
        s.shape = sweep_shape_from_name(sweep_shape);
        s.noise.laser_linewidth = laser_linewidth_hz;
        s.noise.additive_rms = additive_noise_rms;
        s.noise.seed = noise_seed();
        return s;
    }

    DemodConfig demod() const {
        DemodConfig d;
        d.carrier = two_pi * (carrier_khz > 0.0 ? carrier_khz : beat_offset_khz) * 1e3;
        d.lowpass_cutoff = lowpass_cutoff_khz > 0.0 ? two_pi * lowpass_cutoff_khz * 1e3
                                                    : 0.25 * d.carrier;
        d.filter_taps = static_cast<std::size_t>(filter_taps);
        d.dc_block = dc_block;
        d.filter = filter_kind_from_name(filter_kind);
        return d;
    }

    ReflectionNormalization normalization() const {
        ReflectionNormalization n;
        n.incident_intensity = incident_intensity_w_m2;
        n.reference_peak_power = reference_peak_power_pw * 1e-12;
        n.reference_atoms = reference_atoms;
        return n;
    }

    std::vector<double> scan_grid() const {
        return detuning_grid(two_pi * scan_start_mhz * 1e6, two_pi * scan_stop_mhz * 1e6,
                             static_cast<std::size_t>(scan_points));
    }

    std::uint64_t mc_seed() const { return seed; }
    std::uint64_t noise_seed() const { return seed ^ 0x9e3779b97f4a7c15ull; }

    // Fills the derive-me-zeros with their concrete defaults. Idempotent.
    void resolve() {
        if (scan_time_ms == 0.0)
            scan_time_ms = duration_ms;
        if (carrier_khz == 0.0)
            carrier_khz = beat_offset_khz;
        if (lowpass_cutoff_khz == 0.0)
            lowpass_cutoff_khz = 0.25 * carrier_khz;
        if (stack_layers == 0)
            stack_layers = static_cast<double>(effective_layers(lattice()));
    }

    void validate() const {
        if (strength_f2 > 0.0 && offset_f2_mhz == 0.0)
            throw ConfigError("offset_f2_mhz must be set when strength_f2 > 0");
        lattice().validate();
        lines().validate();
        sweep().validate();
        demod().validate();
        if (demod().carrier >= pi * sample_rate_hz)
            throw ConfigError("demod carrier at or above the Nyquist frequency");
        if (scan_points < 2)
            throw ConfigError("scan points must be at least 2");
        if (!(scan_start_mhz < scan_stop_mhz))
            throw ConfigError("scan start must be below scan stop");
        if (mc_samples < 1)
            throw ConfigError("mc_samples must be at least 1");
        if (stack_span_gamma <= 0.0 || stack_points < 2 || coupling_samples < 1)
            throw ConfigError("invalid stack settings");
        if (incident_intensity_w_m2 <= 0.0 || saturation_intensity_w_m2 <= 0.0 ||
            reference_peak_power_pw <= 0.0 || reference_atoms <= 0.0)
            throw ConfigError("normalization values must be positive");
    }
};

namespace detail {

using FieldPtr = std::variant<double RunConfig::*, bool RunConfig::*, std::uint64_t RunConfig::*,
                              std::string RunConfig::*>;

struct FieldDef {
    const char* section;
    const char* key;
    FieldPtr member;
};

inline const std::vector<FieldDef>& config_schema() {
    static const std::vector<FieldDef> schema = {
        {"run", "seed_u64", &RunConfig::seed},
        {"run", "mc_samples", &RunConfig::mc_samples},
        {"run", "out_dir", &RunConfig::out_dir},
        {"lattice", "lambda_dip_nm", &RunConfig::lambda_dip_nm},
        {"lattice", "lambda_brg_nm", &RunConfig::lambda_brg_nm},
        {"lattice", "beta_i_deg", &RunConfig::beta_i_deg},
        {"lattice", "trap_depth_mk", &RunConfig::trap_depth_mk},
        {"lattice", "temperature_uk", &RunConfig::temperature_uk},
        {"lattice", "cavity_waist_um", &RunConfig::cavity_waist_um},
        {"lattice", "cloud_radius_um", &RunConfig::cloud_radius_um},
        {"lattice", "probe_waist_um", &RunConfig::probe_waist_um},
        {"lattice", "n_total", &RunConfig::n_total},
        {"lattice", "illuminated_fraction", &RunConfig::illuminated_fraction},
        {"lattice", "omega_z_rad_s", &RunConfig::omega_z_rad_s},
        {"lattice", "density_cm3", &RunConfig::density_cm3},
        {"lattice", "light_shift_ratio", &RunConfig::light_shift_ratio},
        {"lattice", "acceptance_angle_deg", &RunConfig::acceptance_angle_deg},
        {"lines", "linewidth_mhz", &RunConfig::linewidth_mhz},
        {"lines", "splitting_mhz", &RunConfig::splitting_mhz},
        {"lines", "strength_f3", &RunConfig::strength_f3},
        {"lines", "strength_f4", &RunConfig::strength_f4},
        {"lines", "strength_f2", &RunConfig::strength_f2},
        {"lines", "offset_f2_mhz", &RunConfig::offset_f2_mhz},
        {"scan", "start_mhz", &RunConfig::scan_start_mhz},
        {"scan", "stop_mhz", &RunConfig::scan_stop_mhz},
        {"scan", "points", &RunConfig::scan_points},
        {"sweep", "duration_ms", &RunConfig::duration_ms},
        {"sweep", "scan_time_ms", &RunConfig::scan_time_ms},
        {"sweep", "detuning_start_mhz", &RunConfig::detuning_start_mhz},
        {"sweep", "detuning_stop_mhz", &RunConfig::detuning_stop_mhz},
        {"sweep", "sample_rate_hz", &RunConfig::sample_rate_hz},
        {"sweep", "beat_offset_khz", &RunConfig::beat_offset_khz},
        {"sweep", "pump_difference_khz", &RunConfig::pump_difference_khz},
        {"sweep", "power_reference_pw", &RunConfig::power_reference_pw},
        {"sweep", "power_probe_pw", &RunConfig::power_probe_pw},
        {"sweep", "sweep_shape", &RunConfig::sweep_shape},
        {"sweep", "laser_linewidth_hz", &RunConfig::laser_linewidth_hz},
        {"sweep", "additive_noise_rms", &RunConfig::additive_noise_rms},
        {"demod", "carrier_khz", &RunConfig::carrier_khz},
        {"demod", "lowpass_cutoff_khz", &RunConfig::lowpass_cutoff_khz},
        {"demod", "filter_taps", &RunConfig::filter_taps},
        {"demod", "dc_block", &RunConfig::dc_block},
        {"demod", "filter_kind", &RunConfig::filter_kind},
        {"demod", "spectrum_window", &RunConfig::spectrum_window},
        {"stack", "n_layers", &RunConfig::stack_layers},
        {"stack", "span_gamma", &RunConfig::stack_span_gamma},
        {"stack", "points", &RunConfig::stack_points},
        {"stack", "coupling_samples", &RunConfig::coupling_samples},
        {"stack", "use_broadened_coupling", &RunConfig::use_broadened_coupling},
        {"normalization", "incident_intensity_w_m2", &RunConfig::incident_intensity_w_m2},
        {"normalization", "saturation_intensity_w_m2", &RunConfig::saturation_intensity_w_m2},
        {"normalization", "reference_peak_power_pw", &RunConfig::reference_peak_power_pw},
        {"normalization", "reference_atoms", &RunConfig::reference_atoms},
    };
    return schema;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

inline double parse_number(const std::string& value, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError(where + ": not a number: '" + value + "'");
    return v;
}

template <class M>
struct member_value;
template <class T>
struct member_value<T RunConfig::*> {
    using type = T;
};
template <class M>
using member_value_t = typename member_value<M>::type;

} // namespace detail

// Parses `key = value` lines inside [section] headers onto an existing
// config, so partial files act as overrides of the given base. Lines
// starting with '#' or ';' are comments.
inline RunConfig parse_config(std::istream& in, const std::string& name,
                              RunConfig base = RunConfig{}) {
    std::string line, section;
    std::map<std::string, int> seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = name + ":" + std::to_string(lineno);
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';')
            continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(where + ": malformed section header");
            section = detail::trim(s.substr(1, s.size() - 2));
            bool known = false;
            for (const auto& f : detail::config_schema())
                known = known || section == f.section;
            if (!known)
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string value = detail::trim(s.substr(eq + 1));
        if (section.empty())
            throw ConfigError(where + ": key '" + key + "' outside any section");

        const detail::FieldDef* def = nullptr;
        for (const auto& f : detail::config_schema())
            if (section == f.section && key == f.key)
                def = &f;
        if (!def)
            throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");

        const std::string full = section + "." + key;
        if (auto it = seen.find(full); it != seen.end())
            throw ConfigError(where + ": duplicate key '" + key + "' (first at line " +
                              std::to_string(it->second) + ")");
        seen[full] = lineno;

        std::visit(
            [&](auto member) {
                using T = detail::member_value_t<decltype(member)>;
                if constexpr (std::is_same_v<T, double>) {
                    base.*member = detail::parse_number(value, where);
                } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                    const double v = detail::parse_number(value, where);
                    if (v < 0.0 || v != std::floor(v))
                        throw ConfigError(where + ": expected a non-negative integer");
                    base.*member = static_cast<std::uint64_t>(v);
                } else if constexpr (std::is_same_v<T, bool>) {
                    if (value == "true")
                        base.*member = true;
                    else if (value == "false")
                        base.*member = false;
                    else
                        throw ConfigError(where + ": expected true or false");
                } else {
                    base.*member = value;
                }
            },
            def->member);
    }
    return base;
}

inline RunConfig load_config(const std::string& path, RunConfig base = RunConfig{}) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in, path, std::move(base));
}

inline std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    std::string section;
    char buf[40];
    for (const auto& f : detail::config_schema()) {
        if (section != f.section) {
            if (!section.empty())
                out << '\n';
            section = f.section;
            out << '[' << section << "]\n";
        }
        out << f.key << " = ";
        std::visit(
            [&](auto member) {
                using T = detail::member_value_t<decltype(member)>;
                if constexpr (std::is_same_v<T, double>) {
                    std::snprintf(buf, sizeof buf, "%.17g", cfg.*member);
                    out << buf;
                } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                    out << cfg.*member;
                } else if constexpr (std::is_same_v<T, bool>) {
                    out << (cfg.*member ? "true" : "false");
                } else {
                    out << cfg.*member;
                }
            },
            f.member);
        out << '\n';
    }
    return out.str();
}

// The manifest is the fully resolved configuration plus provenance comments;
// it parses back as a config, so any run can be reproduced from it.
inline std::string manifest_text(const RunConfig& cfg, const std::string& command) {
    RunConfig resolved = cfg;
    resolved.resolve();
    std::ostringstream out;
    out << "# braggsim " << version << '\n';
    out << "# command: " << command << '\n';
    const double gamma = two_pi * resolved.linewidth_mhz * 1e6;
    out << "# diagnostic incoherent_rate_ratio_on_resonance = "
        << incoherent_rate_ratio(resolved.incident_intensity_w_m2,
                                 resolved.saturation_intensity_w_m2, 0.0, gamma)
        << '\n';
    out << serialize_config(resolved);
    return out.str();
}

} // namespace bragg
