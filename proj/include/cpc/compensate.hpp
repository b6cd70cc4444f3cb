/*
 * compensate.hpp: lossless compensator synthesis and evaluation.
 *
 * All compensators attach in parallel at the source terminals. Three
 * constructions are provided:
 *
 *   shunt_for_budeanu_null        C (or L) nulling the Budeanu sum Q_B
 *   shunt_from_equivalent_susceptance
 *                                 C = |B_e|/w (or the dual L) nulling the
 *                                 averaged Iliovici power Q_I
 *   series_lc_for_scattered_reactive
 *                                 (L_x, C_x) branch carrying -i_sr for a
 *                                 two-harmonic scattered reactive current
 *
 * The series branch has susceptance b(n) = n w C_x / (1 - n^2 w^2 L_x C_x);
 * matching it at the two populated orders is a linear solve in C_x and
 * L_x C_x. A source with any other number of reactive harmonics has no
 * two-element solution and is rejected.
 */
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cpc/decomposition.hpp"
#include "cpc/errors.hpp"
#include "cpc/metrics.hpp"
#include "cpc/netlist.hpp"
#include "cpc/spectrum.hpp"

namespace cpc {

struct Compensator {
    enum class Kind { none, shunt_capacitor, shunt_inductor, series_lc };

    Kind kind = Kind::none;
    double capacitance = 0.0; // F, shunt_capacitor and series_lc
    double inductance = 0.0;  // H, shunt_inductor and series_lc

    static Compensator none() { return {}; }
    static Compensator shunt_capacitor(double farads) {
        return {Kind::shunt_capacitor, farads, 0.0};
    }
    static Compensator shunt_inductor(double henries) {
        return {Kind::shunt_inductor, 0.0, henries};
    }
    static Compensator series_lc(double henries, double farads) {
        return {Kind::series_lc, farads, henries};
    }

    bool is_none() const { return kind == Kind::none; }

    Network to_network() const {
        switch (kind) {
        case Kind::shunt_capacitor: return Network::capacitor(capacitance);
        case Kind::shunt_inductor: return Network::inductor(inductance);
        case Kind::series_lc:
            return Network::series({Network::inductor(inductance),
                                    Network::capacitor(capacitance)});
        case Kind::none: break;
        }
        throw Error("an empty compensator has no network");
    }

    friend bool operator==(const Compensator&, const Compensator&) = default;
};

// Shunt element nulling the total Budeanu reactive power: a capacitor adds
// -w C sum n U_n^2 to Q_B, an inductor adds (1/(w L)) sum U_n^2 / n.
inline Compensator shunt_for_budeanu_null(const HarmonicSignal& u, const Network& load) {
    if (!u.has_ac()) throw ZeroSignal("shunt_for_budeanu_null: voltage has no AC content");
    const HarmonicSignal i = load.steady_state_current(u);
    const double qb = budeanu(u, i).first;
    if (std::abs(qb) <= 1e-12) return Compensator::none();
    const double w = u.omega();
    if (qb > 0.0) {
        double weighted = 0.0; // sum n U_n^2
        for (const auto& [n, t] : u.terms())
            weighted += static_cast<double>(n) * (t.a * t.a + t.b * t.b);
        return Compensator::shunt_capacitor(qb / (w * weighted));
    }
    double weighted = 0.0; // sum U_n^2 / n
    for (const auto& [n, t] : u.terms())
        weighted += (t.a * t.a + t.b * t.b) / static_cast<double>(n);
    return Compensator::shunt_inductor(-weighted / (w * qb));
}

// Shunt element nulling the averaged Iliovici power Q_I. For an inductive
// load (B_e < 0) this is C = |B_e|/w; for a capacitive load the dual
// inductor is sized from L = w sum U_n^2 / (B_e ||du||^2), which collapses
// to 1/(w B_e) for a sinusoidal source.
inline Compensator shunt_from_equivalent_susceptance(const HarmonicSignal& u,
                                                     const Network& load) {
    const HarmonicSignal i = load.steady_state_current(u);
    const double be = equivalent_susceptance(u, i);
    if (std::abs(be) <= 1e-12) return Compensator::none();
    const double w = u.omega();
    if (be < 0.0) return Compensator::shunt_capacitor(-be / w);
    double ac = 0.0; // sum_{n>=1} U_n^2
    for (const auto& [n, t] : u.terms()) ac += t.a * t.a + t.b * t.b;
    const HarmonicSignal du = differentiate(u);
    const double dd = rms(du) * rms(du);
    return Compensator::shunt_inductor(w * ac / (be * dd));
}

// Series L_x C_x branch carrying -i_sr in steady state. i_sr must be
// supported on exactly two voltage harmonics.
inline Compensator series_lc_for_scattered_reactive(const HarmonicSignal& u,
                                                    const HarmonicSignal& i_sr) {
    detail::require_same_omega(u, i_sr);
    if (i_sr.terms().size() != 2 || i_sr.dc() != 0.0)
        throw UnsupportedCompensator(
            "unsupported compensator order: scattered reactive current must span exactly "
            "two harmonics");
    const double w = u.omega();
    int order[2];
    double b_req[2]; // branch susceptance required at each order
    int k = 0;
    for (const auto& [n, t] : i_sr.terms()) {
        const Phasor un = term_phasor(u.term(n));
        if (std::abs(un) == 0.0)
            throw UnsupportedCompensator("scattered reactive harmonic " + std::to_string(n) +
                                         " is absent from the voltage");
        // branch current j b U_n must equal -I_sr,n; b = j I_sr,n / U_n
        const Phasor b = Phasor{0.0, 1.0} * term_phasor(t) / un;
        if (std::abs(b.imag()) > 1e-9 * std::abs(b) + 1e-15)
            throw UnsupportedCompensator(
                "scattered reactive current is not in quadrature with the voltage");
        order[k] = n;
        b_req[k] = b.real();
        ++k;
    }
    // n w c + b n^2 w^2 p = b per order, unknowns c = C_x and p = L_x C_x.
    const double n1 = order[0], n2 = order[1];
    const double a11 = n1 * w, a12 = b_req[0] * n1 * n1 * w * w;
    const double a21 = n2 * w, a22 = b_req[1] * n2 * n2 * w * w;
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0)
        throw NonphysicalCompensator("series LC synthesis is degenerate for this current");
    const double c = (b_req[0] * a22 - a12 * b_req[1]) / det;
    const double p = (a11 * b_req[1] - b_req[0] * a21) / det;
    if (!(c > 0.0) || !(p > 0.0))
        throw NonphysicalCompensator("nonphysical compensator: element values not positive");
    const Compensator comp = Compensator::series_lc(p / c, c);
    // The branch across the source must reproduce -i_sr.
    const HarmonicSignal carried = comp.to_network().steady_state_current(u);
    if (rms(carried + i_sr) > 1e-6 * rms(i_sr))
        throw NumericalInconsistency("series LC branch does not reproduce the target current");
    return comp;
}

// Load with compensators attached in parallel at the terminals.
inline Network with_compensators(const Network& load,
                                 const std::vector<Compensator>& compensators) {
    std::vector<Network> parts{load};
    for (const Compensator& c : compensators)
        if (!c.is_none()) parts.push_back(c.to_network());
    if (parts.size() == 1) return load;
    return Network::parallel(std::move(parts));
}

// Recompute the source current and the full power report with the
// compensators attached.
inline PowerReport evaluate_with(const HarmonicSignal& u, const Network& load,
                                 const std::vector<Compensator>& compensators) {
    const Network total = with_compensators(load, compensators);
    return power_report(u, total.steady_state_current(u));
}

} // namespace cpc
