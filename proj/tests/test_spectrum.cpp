#include <catch2/catch_amalgamated.hpp>

#include "cpc/spectrum.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace cpc;
using Catch::Approx;

namespace {
HarmonicSignal two_tone() {
    return HarmonicSignal(1.0, 0.0, {{1, {10.0, 0.0}}, {5, {5.0, 0.0}}});
}
} // namespace

TEST_CASE("rms of harmonic signals", "[spectrum]") {
    SECTION("two-tone signal") {
        REQUIRE(rms(two_tone()) == Approx(11.180339887498949).epsilon(1e-12));
        // against the independent quadrature oracle
        REQUIRE(rms(two_tone()) == Approx(oracles::quadrature_rms(two_tone(), 64)).epsilon(1e-12));
    }
    SECTION("dc-only signal") {
        REQUIRE(rms(HarmonicSignal(2.0, -3.5)) == Approx(3.5));
    }
    SECTION("single rms-scaled term") {
        REQUIRE(rms(HarmonicSignal(1.0, 0.0, {{1, {10.0, 0.0}}})) == Approx(10.0));
    }
}

TEST_CASE("signal addition and scaling", "[spectrum]") {
    const HarmonicSignal s = two_tone();
    SECTION("additive inverse gives the zero signal") {
        const HarmonicSignal z = s + s * -1.0;
        REQUIRE(z.is_zero());
        REQUIRE(rms(z) == 0.0);
    }
    SECTION("scaling is componentwise") {
        const HarmonicSignal scaled = HarmonicSignal(1.0, 0.0, {{1, {10.0, 0.0}}}) * 0.2;
        REQUIRE(scaled.term(1).a == Approx(2.0));
        REQUIRE(scaled.term(1).b == 0.0);
    }
    SECTION("addition is componentwise") {
        const HarmonicSignal sum = HarmonicSignal(1.0, 0.0, {{1, {2.0, 0.0}}}) +
                                   HarmonicSignal(1.0, 0.0, {{1, {0.0, 4.0}}});
        REQUIRE(sum.term(1).a == Approx(2.0));
        REQUIRE(sum.term(1).b == Approx(4.0));
    }
    SECTION("zero coefficients are pruned") {
        const HarmonicSignal sum = HarmonicSignal(1.0, 0.0, {{1, {2.0, 0.0}}, {3, {1.0, 0.0}}}) +
                                   HarmonicSignal(1.0, 0.0, {{3, {-1.0, 0.0}}});
        REQUIRE(sum.terms().size() == 1);
        REQUIRE(sum.terms().contains(1));
    }
    SECTION("mismatched fundamentals are rejected") {
        REQUIRE_THROWS_AS(two_tone() + HarmonicSignal(2.0, 0.0, {{1, {1.0, 0.0}}}),
                          OmegaMismatch);
        REQUIRE_THROWS_AS(inner(two_tone(), HarmonicSignal(3.0)), OmegaMismatch);
    }
}

TEST_CASE("differentiation", "[spectrum]") {
    SECTION("cosine maps to minus sine") {
        const HarmonicSignal d = differentiate(HarmonicSignal(1.0, 0.0, {{1, {1.0, 0.0}}}));
        REQUIRE(d.term(1).a == 0.0);
        REQUIRE(d.term(1).b == Approx(-1.0));
    }
    SECTION("two-tone derivative energy") {
        const double r = rms(differentiate(two_tone()));
        REQUIRE(r * r == Approx(725.0).epsilon(1e-12));
    }
    SECTION("constants vanish") {
        REQUIRE(differentiate(HarmonicSignal(1.0, 7.0)).is_zero());
    }
    SECTION("applying twice scales harmonic n by -(n w)^2") {
        const HarmonicSignal s(2.0, 0.0, {{3, {1.5, -2.0}}});
        const HarmonicSignal dd = differentiate(differentiate(s));
        const double factor = -(3.0 * 2.0) * (3.0 * 2.0);
        REQUIRE(dd.term(3).a == Approx(factor * 1.5));
        REQUIRE(dd.term(3).b == Approx(factor * -2.0));
    }
    SECTION("linearity on random signals") {
        testgen::Rng rng(42);
        for (int k = 0; k < 50; ++k) {
            const HarmonicSignal a = testgen::random_signal(rng);
            const HarmonicSignal b(a.omega(), 0.0, {{2, {1.0, 3.0}}});
            const HarmonicSignal lhs = differentiate(a + b * 2.5);
            const HarmonicSignal rhs = differentiate(a) + differentiate(b) * 2.5;
            REQUIRE(rms(lhs - rhs) <= 1e-9 * std::max(1.0, rms(lhs)));
        }
    }
}

TEST_CASE("inner product", "[spectrum]") {
    SECTION("inner(s, s) equals rms squared") {
        const double r = rms(two_tone());
        REQUIRE(inner(two_tone(), two_tone()) == Approx(r * r));
    }
    SECTION("cosine and sine of the same order are orthogonal") {
        REQUIRE(inner(HarmonicSignal(1.0, 0.0, {{1, {1.0, 0.0}}}),
                      HarmonicSignal(1.0, 0.0, {{1, {0.0, 1.0}}})) == 0.0);
    }
    SECTION("active power of the sinusoidal RL case") {
        REQUIRE(inner(HarmonicSignal(1.0, 0.0, {{1, {10.0, 0.0}}}),
                      HarmonicSignal(1.0, 0.0, {{1, {2.0, 4.0}}})) == Approx(20.0));
    }
    SECTION("spectral inner equals sampled quadrature") {
        testgen::Rng rng(7);
        for (int k = 0; k < 25; ++k) {
            const HarmonicSignal a = testgen::random_signal(rng);
            const HarmonicSignal b(a.omega(), 1.0, {{1, {2.0, -1.0}}, {4, {0.5, 3.0}}});
            const std::size_t m = 2 * static_cast<std::size_t>(std::max(a.max_order(), 4)) + 3;
            const double oracle = oracles::quadrature_inner(a, b, m);
            REQUIRE(inner(a, b) == Approx(oracle).margin(1e-9 * std::max(1.0, std::abs(oracle))));
        }
    }
}

TEST_CASE("sampling", "[spectrum]") {
    SECTION("dc-only signal samples to a constant") {
        const SampledSignal s = sample(HarmonicSignal(1.0, 2.5), 4);
        REQUIRE(s.value == std::vector<double>{2.5, 2.5, 2.5, 2.5});
    }
    SECTION("unit cosine at four points") {
        const SampledSignal s = sample(HarmonicSignal(1.0, 0.0, {{1, {1.0, 0.0}}}), 4);
        const double sq2 = std::numbers::sqrt2;
        REQUIRE(s.value[0] == Approx(sq2));
        REQUIRE(s.value[1] == Approx(0.0).margin(1e-15));
        REQUIRE(s.value[2] == Approx(-sq2));
        REQUIRE(s.value[3] == Approx(0.0).margin(1e-15));
        REQUIRE(s.time[1] == Approx(std::numbers::pi / 2.0));
    }
    SECTION("sampled rms matches spectral rms") {
        const SampledSignal s = sample(two_tone(), 4096);
        double sum = 0.0;
        for (double v : s.value) sum += v * v;
        const double sampled = std::sqrt(sum / 4096.0);
        REQUIRE(sampled == Approx(rms(two_tone())).epsilon(1e-9));
    }
    SECTION("Nyquist violations are rejected") {
        REQUIRE_THROWS_AS(sample(two_tone(), 10), NyquistViolation);
        REQUIRE_NOTHROW(sample(two_tone(), 11));
    }
}

TEST_CASE("Parseval identity on random signals", "[spectrum]") {
    testgen::Rng rng(2024);
    for (int k = 0; k < 100; ++k) {
        const HarmonicSignal s = testgen::random_signal(rng);
        const std::size_t m = 2 * static_cast<std::size_t>(s.max_order()) + 1 +
                              static_cast<std::size_t>(k % 37);
        const double oracle = oracles::quadrature_rms(s, m);
        REQUIRE(rms(s) == Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("phasor mapping round-trips exactly", "[spectrum]") {
    testgen::Rng rng(5);
    std::uniform_real_distribution<double> coeff(-100.0, 100.0);
    for (int k = 0; k < 100; ++k) {
        const HarmonicTerm t{coeff(rng), coeff(rng)};
        const HarmonicTerm back = phasor_term(term_phasor(t));
        REQUIRE(back.a == t.a);
        REQUIRE(back.b == t.b);
    }
    // convention: a - jb
    const Phasor p = term_phasor({3.0, 4.0});
    REQUIRE(p.real() == 3.0);
    REQUIRE(p.imag() == -4.0);
}
