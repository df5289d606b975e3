#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "bragg/broadening.hpp"
#include "bragg/config.hpp"
#include "bragg/scattering.hpp"
#include "bragg/transfer_matrix.hpp"

using namespace bragg;

namespace {

using cd = std::complex<double>;

// Bragg-matched stack with a constant coupling
LayerStack matched_stack(long layers, cd zeta) {
    LayerStack s;
    s.n_layers = layers;
    s.incidence_angle = 58.0 * deg_to_rad;
    s.k_brg = two_pi / 420.2e-9;
    s.spacing = pi / s.k_z(); // k_z * spacing = pi -> round trip 2 pi
    s.areal_density = 2e11;
    s.coupling = [zeta](double) { return zeta; };
    return s;
}

// independent oracle: single-scattering sum with explicit complex arithmetic
cd born_oracle(long layers, cd zeta, double kz_spacing) {
    const cd r1 = cd(0.0, 1.0) * zeta / (1.0 - cd(0.0, 1.0) * zeta);
    cd acc = 0.0;
    for (long m = 0; m < layers; ++m)
        acc += r1 * std::exp(cd(0.0, 2.0 * kz_spacing * static_cast<double>(m)));
    return acc;
}

} // namespace

TEST_CASE("a single layer reflects exactly i zeta / (1 - i zeta)") {
    const cd zeta(3e-3, 2e-3);
    auto stack = matched_stack(1, zeta);
    const auto amp = stack_amplitudes(stack, 0.0);
    const cd expect = cd(0.0, 1.0) * zeta / (1.0 - cd(0.0, 1.0) * zeta);
    CHECK(std::abs(amp.reflection - expect) < 1e-15);
    CHECK(std::abs(amp.transmission - (1.0 + expect)) < 1e-15);
}

TEST_CASE("weak matched stacks approach the coherent born sum") {
    for (double scale : {1e-3, 1e-4, 1e-5}) {
        const cd zeta(0.0, scale); // resonant-like coupling
        auto stack = matched_stack(40, zeta);
        const auto amp = stack_amplitudes(stack, 0.0);
        const cd naive = 40.0 * cd(0.0, 1.0) * zeta;
        CAPTURE(scale);
        CHECK(std::abs(amp.reflection / naive - 1.0) < 60.0 * scale);
    }
}

TEST_CASE("transfer matrix matches the direct born summation off matching") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const cd zeta(1e-5 * uni(rng), 1e-5 * (1.0 + uni(rng)));
        auto stack = matched_stack(30, zeta);
        stack.spacing *= 1.0 + 0.2 * uni(rng); // detune the matching
        const auto amp = stack_amplitudes(stack, 0.0);
        const cd oracle = born_oracle(30, zeta, stack.k_z() * stack.spacing);
        // multiple scattering enters at second order in the summed coupling
        const double second_order = std::pow(30.0 * std::abs(zeta), 2);
        CAPTURE(zeta, stack.spacing);
        CHECK(std::abs(amp.reflection - oracle) <= 2.0 * second_order + 1e-14);
    }
}

TEST_CASE("pi mismatch suppresses the reflected power like the structure factor") {
    const cd zeta(0.0, 1e-4);
    const long layers = 5; // odd, so the alternating sum leaves one layer
    auto matched = matched_stack(layers, zeta);
    auto mismatched = matched;
    mismatched.spacing = matched.spacing * 1.5; // extra pi per round trip

    const double p_matched = std::norm(stack_amplitudes(matched, 0.0).reflection);
    const double p_mismatched = std::norm(stack_amplitudes(mismatched, 0.0).reflection);
    const double suppression = p_matched / p_mismatched;

    const double s_matched = std::norm(structure_factor(layers, 0.0));
    const double s_mismatched = std::norm(structure_factor(layers, pi));
    CHECK(suppression == Catch::Approx(s_matched / s_mismatched).epsilon(0.01));
    CHECK(suppression == Catch::Approx(25.0).epsilon(0.01));
}

TEST_CASE("layer coupling is linear in density and vanishes with alpha") {
    CHECK(layer_coupling(0.0, 1e11, 1e7) == cd(0.0, 0.0));
    const cd alpha(1e-21, -4e-21);
    const cd z1 = layer_coupling(alpha, 1e11, 1.6e7);
    const cd z2 = layer_coupling(alpha, 2e11, 1.6e7);
    CHECK(std::abs(z2 - 2.0 * z1) < 1e-18);
    CHECK_THROWS_AS(layer_coupling(alpha, 0.0, 1.6e7), std::invalid_argument);

    // reference-scale dilute layer: n = 5e11 cm^-3 spaced at lambda_dip/2
    const auto lattice = RunConfig{}.lattice();
    const double spacing = 0.5 * lattice.lambda_dip;
    const double sigma = lattice.density * spacing;
    const double dkz = 2.0 * lattice.k_brg() * std::cos(lattice.incidence_angle);
    const auto set = make_line_set({{0.0, two_pi * 1.3e6, 1.0}}, 420.2e-9);
    const cd zeta = layer_coupling(lineset_polarizability(0.0, set), sigma, dkz);
    CHECK(std::abs(zeta) < 0.05);
    CHECK(std::abs(zeta) > 1e-4);
}

TEST_CASE("resonant coupling attenuates rather than amplifies") {
    // on resonance alpha is -i|a|, so zeta is +i|z| and |t| < 1
    const cd zeta = layer_coupling(cd(0.0, -5e-21), 2e11, 1.6e7);
    CHECK(zeta.imag() > 0.0);
    auto stack = matched_stack(1, zeta);
    const auto amp = stack_amplitudes(stack, 0.0);
    CHECK(std::abs(amp.transmission) < 1.0);
}

TEST_CASE("lossless stacks conserve energy to 1e-9") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-0.3, 0.3);
    std::uniform_int_distribution<long> layers(1, 200);
    for (int rep = 0; rep < 100; ++rep) {
        const cd zeta(uni(rng), 0.0); // real coupling = lossless sheet
        auto stack = matched_stack(layers(rng), zeta);
        stack.spacing *= 1.0 + 0.3 * uni(rng);
        const auto amp = stack_amplitudes(stack, 0.0);
        const double sum = std::norm(amp.reflection) + std::norm(amp.transmission);
        CAPTURE(zeta.real(), stack.n_layers);
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
}

TEST_CASE("reflection is reciprocal for the symmetric stack") {
    const cd zeta(0.01, 0.004);
    for (long n : {1L, 7L, 64L}) {
        auto stack = matched_stack(n, zeta);
        stack.spacing *= 1.1;
        const auto amp = stack_amplitudes(stack, 0.0);
        CHECK(std::abs(amp.reflection - amp.reflection_reverse) < 1e-12);
    }
}

TEST_CASE("zero coupling transmits a pure propagation phase") {
    auto stack = matched_stack(12, cd(0.0, 0.0));
    const auto amp = stack_amplitudes(stack, 0.0);
    CHECK(std::abs(amp.reflection) == 0.0);
    CHECK(std::abs(amp.transmission) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("singular coupling is rejected") {
    auto stack = matched_stack(3, cd(0.0, -1.0)); // 1 - i zeta = 0
    CHECK_THROWS_AS(stack_amplitudes(stack, 0.0), std::domain_error);
}

TEST_CASE("born equivalence report in the dilute reference regime") {
    const RunConfig run;
    const auto lattice = run.lattice();
    const auto set = run.lines();
    const double gamma = two_pi * run.linewidth_mhz * 1e6;
    const auto grid = detuning_grid(-20.0 * gamma, 20.0 * gamma, 401);

    LayerStack stack;
    stack.n_layers = effective_layers(lattice);
    stack.spacing = 0.5 * lattice.lambda_dip;
    stack.areal_density = lattice.density * stack.spacing;
    stack.incidence_angle = lattice.incidence_angle;
    stack.k_brg = lattice.k_brg();

    // per-plane coupling from the grating's normalized reflection shared
    // over the illuminated planes: i zeta(Delta) = r(Delta) / N_s
    const auto table = broadened_reflection_spectrum(set, lattice, run.normalization(), grid,
                                                     20000, 13);
    const double planes = static_cast<double>(illuminated_planes(lattice));
    stack.coupling = [&](double d) {
        const auto r1 = table.at(d) / planes;
        return std::complex<double>(r1.imag(), -r1.real());
    };

    const double dev = born_equivalence_report(stack, std::span<const double>(grid));
    CHECK(dev < 1e-3);
    CHECK(dev > 0.0);

    // the overload taking a reference spectrum agrees with the raw routes
    ComplexReflection born;
    born.detunings = grid;
    born.values = born_reflection_raw(stack, grid);
    CHECK(born_equivalence_report(stack, born) == Catch::Approx(dev).epsilon(1e-9));
}

TEST_CASE("strongly coupled stacks leave the born regime") {
    // |zeta| N = 2: multiple scattering saturates the response
    auto stack = matched_stack(50, cd(0.0, 0.04));
    const auto grid = detuning_grid(-1.0, 1.0, 3);
    const auto matrix = stack_reflection_raw(stack, grid);
    const auto born = born_reflection_raw(stack, grid);
    const double dev = equivalence_deviation(matrix, born);
    CHECK(dev > 0.1);
    CHECK(dev < 2.0);
}

TEST_CASE("report rejects empty and mismatched grids") {
    auto stack = matched_stack(3, cd(0.0, 1e-4));
    const std::vector<double> empty;
    CHECK_THROWS_AS(born_equivalence_report(stack, std::span<const double>(empty)),
                    std::invalid_argument);
    std::vector<cd> a(3), b(4);
    CHECK_THROWS_AS(equivalence_deviation(a, b), std::invalid_argument);
}

TEST_CASE("stack reflection stays a physical reflection on dilute stacks") {
    auto stack = matched_stack(47, cd(0.0, 5e-4));
    const auto grid = detuning_grid(-1.0, 1.0, 11);
    const auto refl = stack_reflection(stack, grid);
    for (const auto& v : refl.values)
        CHECK(std::abs(v) <= 1.0);
}
