#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "bragg/config.hpp"
#include "bragg/csv.hpp"
#include "bragg/presets.hpp"

using namespace bragg;
namespace fs = std::filesystem;

namespace {

RunConfig parse_str(const std::string& text, RunConfig base = RunConfig{}) {
    std::istringstream in(text);
    return parse_config(in, "test.ini", std::move(base));
}

} // namespace

TEST_CASE("defaults and presets validate after resolution") {
    for (const char* name : {"paper-fig2c", "paper-fig3", "paper-fig4"}) {
        auto cfg = preset_by_name(name);
        cfg.resolve();
        CHECK_NOTHROW(cfg.validate());
    }
    CHECK_THROWS_AS(preset_by_name("fig9"), std::invalid_argument);
}

TEST_CASE("resolution is idempotent") {
    auto cfg = preset_fig4();
    cfg.resolve();
    auto again = cfg;
    again.resolve();
    CHECK(serialize_config(cfg) == serialize_config(again));
    CHECK(cfg.scan_time_ms == 4.096);
    CHECK(cfg.carrier_khz == 52.0);
    CHECK(cfg.stack_layers >= 46);
}

TEST_CASE("config text round-trips exactly") {
    auto cfg = preset_fig3();
    cfg.resolve();
    const auto text = serialize_config(cfg);
    const auto reloaded = parse_str(text);
    CHECK(serialize_config(reloaded) == text);
}

TEST_CASE("partial files override the given base") {
    const auto cfg = parse_str("[sweep]\nbeat_offset_khz = 12.5\n", preset_fig3());
    CHECK(cfg.beat_offset_khz == 12.5);
    CHECK(cfg.duration_ms == 20.0); // untouched preset value
}

TEST_CASE("parser reports precise locations for bad input") {
    auto check_message = [](const std::string& text, const std::string& needle) {
        try {
            parse_str(text);
            FAIL("expected a ConfigError");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            CAPTURE(msg, needle);
            CHECK(msg.find(needle) != std::string::npos);
        }
    };
    check_message("[lattice]\nnonsense_key = 1\n", "test.ini:2");
    check_message("[lattice]\nnonsense_key = 1\n", "unknown key");
    check_message("[nosuch]\n", "unknown section");
    check_message("stray = 1\n", "outside any section");
    check_message("[lattice]\nbeta_i_deg 58\n", "expected 'key = value'");
    check_message("[lattice]\nbeta_i_deg = abc\n", "not a number");
    check_message("[lattice]\nbeta_i_deg = 58\nbeta_i_deg = 59\n", "duplicate key");
    check_message("[demod]\ndc_block = maybe\n", "true or false");
    check_message("[run]\nseed_u64 = -3\n", "non-negative integer");
}

TEST_CASE("comments and blank lines are ignored") {
    const auto cfg = parse_str("# comment\n\n; other comment\n[run]\nseed_u64 = 9\n");
    CHECK(cfg.seed == 9);
}

TEST_CASE("typed views convert units at the boundary") {
    RunConfig cfg;
    const auto lat = cfg.lattice();
    CHECK(lat.lambda_brg == Catch::Approx(420.2e-9));
    CHECK(lat.incidence_angle == Catch::Approx(58.0 * pi / 180.0));
    CHECK(lat.temperature == Catch::Approx(200e-6));
    CHECK(lat.trap_depth == Catch::Approx(1e-3 * k_boltzmann));
    CHECK(lat.density == Catch::Approx(5e17));

    const auto sw = cfg.sweep();
    CHECK(sw.duration == Catch::Approx(1e-3));
    CHECK(sw.beat_offset == Catch::Approx(two_pi * 5.4e3));
    CHECK(sw.field_reference == Catch::Approx(std::sqrt(54e-12)));

    const auto dm = cfg.demod();
    CHECK(dm.carrier == Catch::Approx(two_pi * 5.4e3));
    CHECK(dm.lowpass_cutoff == Catch::Approx(0.25 * dm.carrier));

    const auto set = cfg.lines();
    REQUIRE(set.lines.size() == 2);
    CHECK(set.lines[0].center_offset == Catch::Approx(-two_pi * 40e6));
    CHECK(set.lines[1].relative_strength == 3.0);
}

TEST_CASE("the optional third line needs an explicit offset") {
    RunConfig cfg;
    cfg.strength_f2 = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.offset_f2_mhz = -62.0;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.lines().lines.size() == 3);
}

TEST_CASE("validation names the violated constraint") {
    RunConfig cfg;
    cfg.sample_rate_hz = 8.0; // far below the beat carrier
    try {
        cfg.validate();
        FAIL("expected a validation error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("Nyquist") != std::string::npos);
    }
    cfg = RunConfig{};
    cfg.scan_start_mhz = 10.0;
    cfg.scan_stop_mhz = -10.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("manifest parses back as a configuration") {
    auto cfg = preset_fig4();
    cfg.seed = 4242;
    const auto text = manifest_text(cfg, "moving");
    CHECK(text.find("braggsim") != std::string::npos);
    CHECK(text.find("command: moving") != std::string::npos);
    const auto reloaded = parse_str(text);
    CHECK(reloaded.seed == 4242);
    cfg.resolve();
    CHECK(serialize_config(reloaded) == serialize_config(cfg));
}

TEST_CASE("csv formatting survives a parse round trip") {
    for (double v : {0.0, 1.0, -3.25, 6.02214076e23, 1.0 / 3.0, 5.4e3, -1e-300}) {
        const auto s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv writers emit the declared schemas") {
    const auto dir = fs::temp_directory_path() / "bragg_csv_test";
    fs::create_directories(dir);

    ComplexReflection r;
    r.detunings = {-1.0, 0.0, 1.0};
    r.values = {{0.1, 0.0}, {0.0, -0.2}, {0.1, 0.1}};
    write_reflection_csv((dir / "r.csv").string(), r);
    std::ifstream in(dir / "r.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "detuning_rad_s,re_r,im_r");
    std::string row;
    std::getline(in, row);
    CHECK(row == "-1,0.10000000000000001,0");

    BeatTrace t;
    t.sample_rate = 10.0;
    t.samples = {1.0, 2.0};
    write_trace_csv((dir / "t.csv").string(), t);
    std::ifstream tin(dir / "t.csv");
    std::getline(tin, header);
    CHECK(header == "time_s,value,detuning_rad_s");

    DemodResult d;
    d.time = {0.0};
    d.u_c = {1.0};
    d.u_s = {0.5};
    d.amplitude = {1.118};
    d.phase = {-0.46};
    write_demod_csv((dir / "d.csv").string(), d);
    std::ifstream din(dir / "d.csv");
    std::getline(din, header);
    CHECK(header == "time_s,u_c,u_s,amplitude,phase_rad");

    SpectrumEstimate s;
    s.frequencies = {0.0, 1.0};
    s.magnitude = {0.0, 3.0};
    write_spectrum_csv((dir / "s.csv").string(), s);
    std::ifstream sin_(dir / "s.csv");
    std::getline(sin_, header);
    CHECK(header == "freq_hz,magnitude");

    fs::remove_all(dir);
}
