// braggsim: command-line front end for the Bragg grating simulator.
// Subcommands: spectrum, heterodyne, moving, validate.
// Exit codes: 0 success, 1 validation failure, 2 I/O error.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bragg/bragg.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::string preset;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, const std::string& default_preset) {
    opt.preset = default_preset;
    cmd->add_option("--config", opt.config_path, "configuration file (overrides preset values)");
    cmd->add_option("--out", opt.out_dir, "output directory (default: config out_dir)");
    cmd->add_option("--preset", opt.preset, "paper-fig2c, paper-fig3 or paper-fig4")
        ->check(CLI::IsMember({"paper-fig2c", "paper-fig3", "paper-fig4"}));
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&opt](std::uint64_t v) { opt.seed = v; opt.seed_set = true; },
        "random seed (overrides config)");
}

bragg::RunConfig resolve_options(const CommonOptions& opt) {
    bragg::RunConfig cfg = bragg::preset_by_name(opt.preset);
    if (!opt.config_path.empty())
        cfg = bragg::load_config(opt.config_path, cfg);
    if (opt.seed_set)
        cfg.seed = opt.seed;
    return cfg;
}

std::string out_dir_of(const CommonOptions& opt, const bragg::RunConfig& cfg) {
    return opt.out_dir.empty() ? cfg.out_dir : opt.out_dir;
}

void print_files(const bragg::CommandResult& res) {
    for (const auto& f : res.files)
        std::cout << "wrote " << f << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bragg scattering simulator: reflection spectra, heterodyne beats, "
                 "lock-in demodulation and moving-lattice Doppler signatures"};
    app.set_version_flag("--version", bragg::version);
    app.require_subcommand(1);

    CommonOptions spectrum_opt, heterodyne_opt, moving_opt, validate_opt;
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "broadened complex reflection spectrum to CSV");
    add_common(spectrum_cmd, spectrum_opt, "paper-fig2c");
    auto* heterodyne_cmd =
        app.add_subcommand("heterodyne", "swept beat trace, demodulation and closure report");
    add_common(heterodyne_cmd, heterodyne_opt, "paper-fig3");
    auto* moving_cmd =
        app.add_subcommand("moving", "moving-lattice beat and reference spectra");
    add_common(moving_cmd, moving_opt, "paper-fig4");
    auto* validate_cmd = app.add_subcommand("validate", "run the invariant suite");
    add_common(validate_cmd, validate_opt, "paper-fig3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (spectrum_cmd->parsed()) {
            const auto cfg = resolve_options(spectrum_opt);
            print_files(bragg::cmd_spectrum(cfg, out_dir_of(spectrum_opt, cfg)));
        } else if (heterodyne_cmd->parsed()) {
            const auto cfg = resolve_options(heterodyne_opt);
            print_files(bragg::cmd_heterodyne(cfg, out_dir_of(heterodyne_opt, cfg)));
        } else if (moving_cmd->parsed()) {
            const auto cfg = resolve_options(moving_opt);
            print_files(bragg::cmd_moving(cfg, out_dir_of(moving_opt, cfg)));
        } else if (validate_cmd->parsed()) {
            const auto cfg = resolve_options(validate_opt);
            const auto rep = bragg::cmd_validate(cfg, out_dir_of(validate_opt, cfg));
            for (const auto& c : rep.checks)
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
            if (!rep.ok()) {
                std::cerr << "validation failed\n";
                return 1;
            }
            std::cout << "all checks passed\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
