#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "cpc/netlist.hpp"
#include "support/random_gen.hpp"

using namespace cpc;
using Catch::Approx;

namespace {

Network rl_load() { return Network::series({Network::resistor(1.0), Network::inductor(2.0)}); }

// Naive complex-arithmetic evaluation for AC frequencies; no limit
// handling, used as an oracle against the library's tree walker.
std::complex<double> naive_admittance(const Network& net, double x) {
    using cd = std::complex<double>;
    switch (net.kind()) {
    case Network::Kind::resistor: return cd{1.0 / net.element_value(), 0.0};
    case Network::Kind::inductor: return 1.0 / (cd{0.0, x * net.element_value()});
    case Network::Kind::capacitor: return cd{0.0, x * net.element_value()};
    case Network::Kind::parallel: {
        cd sum{};
        for (const auto& child : net.children()) sum += naive_admittance(child, x);
        return sum;
    }
    case Network::Kind::series: {
        cd z{};
        for (const auto& child : net.children()) z += 1.0 / naive_admittance(child, x);
        return 1.0 / z;
    }
    default: return {};
    }
}

} // namespace

TEST_CASE("admittance of the series RL load", "[netlist]") {
    SECTION("fundamental") {
        const auto y = rl_load().admittance(1, 1.0);
        REQUIRE(y.real() == Approx(0.2));
        REQUIRE(y.imag() == Approx(-0.4));
    }
    SECTION("fifth harmonic") {
        const auto y = rl_load().admittance(5, 1.0);
        REQUIRE(y.real() == Approx(1.0 / 101.0));
        REQUIRE(y.imag() == Approx(-10.0 / 101.0));
    }
    SECTION("bare resistor at any order") {
        const Network r = Network::resistor(4.0);
        REQUIRE(r.admittance(0, 1.0) == std::complex<double>{0.25, 0.0});
        REQUIRE(r.admittance(7, 3.0) == std::complex<double>{0.25, 0.0});
    }
}

TEST_CASE("DC limit policy", "[netlist]") {
    SECTION("a bare inductor shorts the port at DC") {
        REQUIRE_THROWS_AS(Network::inductor(1.0).admittance(0, 1.0), SingularAdmittance);
        REQUIRE(Network::inductor(1.0).admittance_finite(0, 1.0) == false);
    }
    SECTION("series R-L is finite at DC") {
        REQUIRE(rl_load().admittance(0, 1.0) == std::complex<double>{1.0, 0.0});
    }
    SECTION("a series capacitor opens the path at DC") {
        const Network net = Network::series({Network::resistor(2.0), Network::capacitor(0.5)});
        REQUIRE(net.admittance(0, 1.0) == std::complex<double>{0.0, 0.0});
    }
    SECTION("a parallel inductor shorts the whole port at DC") {
        const Network net = Network::parallel({Network::resistor(2.0), Network::inductor(1.0)});
        REQUIRE_THROWS_AS(net.admittance(0, 1.0), SingularAdmittance);
    }
    SECTION("a shorted group inside a series path is absorbed") {
        const Network net = Network::series(
            {Network::resistor(4.0),
             Network::parallel({Network::inductor(1.0), Network::capacitor(1.0)})});
        REQUIRE(net.admittance(0, 1.0) == std::complex<double>{0.25, 0.0});
    }
}

TEST_CASE("admittance tables", "[netlist]") {
    const Network net = Network::admittance_table({{0, {0.5, 0.0}}, {1, {0.2, -0.4}}});
    REQUIRE(net.admittance(1, 1.0) == std::complex<double>{0.2, -0.4});
    REQUIRE(net.admittance(0, 1.0) == std::complex<double>{0.5, 0.0});
    SECTION("missing orders are an error") {
        REQUIRE_THROWS_AS(net.admittance(3, 1.0), SingularAdmittance);
        REQUIRE(net.admittance_finite(3, 1.0) == false);
    }
}

TEST_CASE("element validation", "[netlist]") {
    REQUIRE_THROWS_AS(Network::resistor(0.0), Error);
    REQUIRE_THROWS_AS(Network::inductor(-2.0), Error);
    REQUIRE_THROWS_AS(Network::series({}), Error);
}

TEST_CASE("steady-state current", "[netlist]") {
    SECTION("sinusoidal RL case") {
        const HarmonicSignal u(1.0, 0.0, {{1, {10.0, 0.0}}});
        const HarmonicSignal i = rl_load().steady_state_current(u);
        REQUIRE(i.term(1).a == Approx(2.0));
        REQUIRE(i.term(1).b == Approx(4.0));
        REQUIRE(rms(i) == Approx(2.0 * std::sqrt(5.0)));
    }
    SECTION("nonsinusoidal RL case: per-harmonic rms") {
        const HarmonicSignal u(1.0, 0.0, {{1, {10.0, 0.0}}, {5, {5.0, 0.0}}});
        const HarmonicSignal i = rl_load().steady_state_current(u);
        const HarmonicTerm t1 = i.term(1), t5 = i.term(5);
        REQUIRE(std::hypot(t1.a, t1.b) == Approx(10.0 / std::sqrt(5.0)));
        REQUIRE(std::hypot(t5.a, t5.b) == Approx(5.0 / std::sqrt(101.0)));
    }
    SECTION("Ohm's law for a bare resistor") {
        const HarmonicSignal u(1.0, 0.0, {{1, {10.0, 0.0}}});
        const HarmonicSignal i = Network::resistor(2.0).steady_state_current(u);
        REQUIRE(i.term(1).a == Approx(5.0));
        REQUIRE(i.term(1).b == 0.0);
    }
    SECTION("DC response uses the real part of Y_0") {
        const HarmonicSignal u(1.0, 3.0, {{1, {1.0, 0.0}}});
        const HarmonicSignal i = rl_load().steady_state_current(u);
        REQUIRE(i.dc() == Approx(3.0));
    }
    SECTION("singular admittance at a populated order is an error") {
        const HarmonicSignal u(1.0, 3.0, {{1, {1.0, 0.0}}});
        REQUIRE_THROWS_AS(Network::inductor(1.0).steady_state_current(u), SingularAdmittance);
    }
    SECTION("linearity in the source") {
        testgen::Rng rng(11);
        for (int k = 0; k < 30; ++k) {
            const auto [u, net] = testgen::random_instance(rng);
            const HarmonicSignal u2 = u * 0.7;
            const HarmonicSignal lhs = net.steady_state_current(u + u2);
            const HarmonicSignal rhs =
                net.steady_state_current(u) + net.steady_state_current(u2);
            REQUIRE(rms(lhs - rhs) <= 1e-9 * std::max(1.0, rms(lhs)));
        }
    }
}

TEST_CASE("parallel attachment adds admittances", "[netlist]") {
    SECTION("C = 0.4 cancels the RL susceptance at the fundamental") {
        const Network total = rl_load().parallel_with(Network::capacitor(0.4));
        REQUIRE(total.admittance(1, 1.0).imag() == Approx(0.0).margin(1e-15));
        REQUIRE(total.admittance(1, 1.0).real() == Approx(0.2));
    }
    SECTION("C = 0.072 leaves B = -0.328") {
        const Network total = rl_load().parallel_with(Network::capacitor(0.072));
        REQUIRE(total.admittance(1, 1.0).imag() == Approx(-0.328));
    }
    SECTION("sum rule on random trees") {
        testgen::Rng rng(23);
        for (int k = 0; k < 40; ++k) {
            const Network a = testgen::random_rlc_tree(rng);
            const Network b = testgen::random_rlc_tree(rng);
            const auto ya = a.admittance(3, 2.0);
            const auto yb = b.admittance(3, 2.0);
            const auto total = a.parallel_with(b).admittance(3, 2.0);
            REQUIRE(total.real() == Approx(ya.real() + yb.real()).epsilon(1e-12));
            REQUIRE(total.imag() == Approx(ya.imag() + yb.imag()).epsilon(1e-12));
        }
    }
}

TEST_CASE("tree evaluation matches direct complex arithmetic", "[netlist]") {
    testgen::Rng rng(99);
    for (int k = 0; k < 60; ++k) {
        const Network net = testgen::random_rlc_tree(rng);
        const double omega = testgen::log_uniform(rng, 0.25, 16.0);
        for (int n : {1, 2, 7}) {
            const auto expected = naive_admittance(net, n * omega);
            const auto actual = net.admittance(n, omega);
            const double scale = std::max(1e-12, std::abs(expected));
            REQUIRE(std::abs(actual - expected) <= 1e-9 * scale);
        }
    }
}
