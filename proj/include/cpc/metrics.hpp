/*
 * metrics.hpp: scalar power quantities and load characterization.
 *
 * Sign conventions. Per harmonic, Q_n = Im{U_n conj(I_n)}, so inductive
 * loads yield Q_n > 0 while their susceptance B_n is negative. The Iliovici
 * integral Q_I = (1/wT) closed-int u di weights each harmonic by its order:
 * Q_In = n Q_n, and Budeanu's Q_B = sum Q_In / n recovers the classic sum.
 * The equivalent conductance G_e = P/||u||^2 and equivalent susceptance
 * B_e = -w^2 Q_I/||du||^2 summarize the average load behaviour; their signs
 * classify the load (passive/active, inductive/capacitive).
 */
#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "cpc/decomposition.hpp"
#include "cpc/errors.hpp"
#include "cpc/spectrum.hpp"

namespace cpc {

enum class PowerFlow { passive, active };
enum class ReactiveCharacter { inductive, capacitive, resistive };

struct LoadCharacter {
    PowerFlow flow = PowerFlow::passive;
    ReactiveCharacter reactance = ReactiveCharacter::resistive;

    friend bool operator==(const LoadCharacter&, const LoadCharacter&) = default;
};

inline std::string to_string(const LoadCharacter& c) {
    std::string s = c.flow == PowerFlow::passive ? "passive" : "active";
    s += '-';
    switch (c.reactance) {
    case ReactiveCharacter::inductive: s += "inductive"; break;
    case ReactiveCharacter::capacitive: s += "capacitive"; break;
    case ReactiveCharacter::resistive: s += "resistive"; break;
    }
    return s;
}

// Per-harmonic load data as reported by the measurement circuits: active
// power P_n, reactive power Q_n, the order-weighted Iliovici power Q_In,
// and the equivalent element values G_n and B_n.
struct HarmonicPowers {
    double P_n = 0.0;
    double Q_n = 0.0;
    double Q_In = 0.0;
    double G_n = 0.0;
    double B_n = 0.0;
};

struct PowerReport {
    double P = 0.0;   // active power [W]
    double S = 0.0;   // apparent power [VA]
    double PF = 0.0;  // power factor
    double Q_B = 0.0; // Budeanu reactive power [var]
    double D_B = 0.0; // Budeanu distortion power [VA]
    double Q_F = 0.0; // Fryze non-active power [VA]
    double D_s = 0.0; // scattered (active) power [VA]
    double Q_r = 0.0; // reactive power ||u|| ||i_r|| [var]
    double Q_i = 0.0; // normed Iliovici power ||u|| ||i_I|| [var]
    double Q_s = 0.0; // scattered reactive power [var]
    double Q_I = 0.0; // averaged Iliovici reactive power [var]
    double G_e = 0.0; // equivalent conductance [S]
    double B_e = 0.0; // equivalent susceptance [S]
    LoadCharacter character;
    std::map<int, HarmonicPowers> per_harmonic;
};

inline double active_power(const HarmonicSignal& u, const HarmonicSignal& i) {
    return inner(u, i);
}

inline double apparent_power(const HarmonicSignal& u, const HarmonicSignal& i) {
    return rms(u) * rms(i);
}

inline double power_factor(const HarmonicSignal& u, const HarmonicSignal& i) {
    const double s = apparent_power(u, i);
    if (s == 0.0) throw ZeroSignal("power_factor: apparent power is zero");
    return inner(u, i) / s;
}

namespace detail {

inline double harmonic_reactive(const HarmonicTerm& tu, const HarmonicTerm& ti) {
    return tu.a * ti.b - tu.b * ti.a; // Im{U conj(I)}
}

} // namespace detail

// (Q_B, D_B). D_B^2 = S^2 - P^2 - Q_B^2; a radicand below -1e-9 S^2 is a
// numerical-consistency error, small negatives clip to zero.
inline std::pair<double, double> budeanu(const HarmonicSignal& u, const HarmonicSignal& i) {
    double qb = 0.0;
    for (const auto& [n, tu] : u.terms()) qb += detail::harmonic_reactive(tu, i.term(n));
    const double s = apparent_power(u, i);
    const double p = active_power(u, i);
    double radicand = s * s - p * p - qb * qb;
    if (radicand < 0.0) {
        if (radicand < -1e-9 * s * s)
            throw NumericalInconsistency("Budeanu distortion radicand is negative");
        radicand = 0.0;
    }
    return {qb, std::sqrt(radicand)};
}

// Q_F = ||u|| ||i - i_a||; equals the Cauchy-Schwarz residual sqrt(S^2-P^2).
inline double fryze_reactive(const HarmonicSignal& u, const HarmonicSignal& i) {
    return rms(u) * rms(i - active_current(u, i));
}

// Direct quadrature of the double-integral residual
//   (1/2T^2) int int (u(s) i(t) - u(t) i(s))^2 ds dt
// on an M x M trapezoid grid; returns its square root. Kept as a literal
// double sum so it stays an oracle independent of the spectral identities.
inline double cs_residual_oracle(const HarmonicSignal& u, const HarmonicSignal& i,
                                 std::size_t samples) {
    detail::require_same_omega(u, i);
    const std::size_t min_order =
        2 * static_cast<std::size_t>(std::max(u.max_order(), i.max_order()));
    if (samples <= min_order)
        throw NyquistViolation("cs_residual_oracle: grid too coarse for the harmonic content");
    const SampledSignal su = sample(u, samples);
    const SampledSignal si = sample(i, samples);
    double sum = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
        for (std::size_t k = 0; k < samples; ++k) {
            const double d = su.value[j] * si.value[k] - su.value[k] * si.value[j];
            sum += d * d;
        }
    }
    const double m = static_cast<double>(samples);
    return std::sqrt(sum / (2.0 * m * m));
}

// Q_In = n Q_n: the loop area the n-th voltage harmonic traces against the
// current, normalized to the fundamental period.
inline double iliovici_per_harmonic(const HarmonicSignal& u, const HarmonicSignal& i, int n) {
    return static_cast<double>(n) * detail::harmonic_reactive(u.term(n), i.term(n));
}

// Q_I = (1/wT) closed-int u di = sum_n Q_In.
inline double iliovici_total(const HarmonicSignal& u, const HarmonicSignal& i) {
    double sum = 0.0;
    for (const auto& [n, tu] : u.terms())
        sum += static_cast<double>(n) * detail::harmonic_reactive(tu, i.term(n));
    return sum;
}

// Diagnostic: Q_B computed directly versus sum_n Q_In / n; the two are
// equal up to roundoff.
inline std::pair<double, double> budeanu_iliovici_identity(const HarmonicSignal& u,
                                                           const HarmonicSignal& i) {
    const double lhs = budeanu(u, i).first;
    double rhs = 0.0;
    for (const auto& [n, tu] : u.terms())
        rhs += iliovici_per_harmonic(u, i, n) / static_cast<double>(n);
    return {lhs, rhs};
}

inline double equivalent_conductance(const HarmonicSignal& u, const HarmonicSignal& i) {
    const double uu = rms(u) * rms(u);
    if (uu == 0.0) throw ZeroSignal("equivalent_conductance: source voltage is zero");
    return inner(u, i) / uu;
}

// B_e = -w^2 Q_I / ||du||^2 (equivalently w <i, du> / ||du||^2).
inline double equivalent_susceptance(const HarmonicSignal& u, const HarmonicSignal& i) {
    const HarmonicSignal du = differentiate(u);
    const double dd = rms(du) * rms(du);
    if (dd == 0.0) throw ZeroSignal("equivalent_susceptance: voltage has no AC content");
    const double w = u.omega();
    return -w * w * iliovici_total(u, i) / dd;
}

struct CpcPowers {
    double D_s = 0.0;
    double Q_r = 0.0;
    double Q_i = 0.0;
    double Q_s = 0.0;
};

// Each CPC power is ||u|| times the rms of the matching current component.
inline CpcPowers cpc_powers(const HarmonicSignal& u, const Decomposition& d) {
    const double ru = rms(u);
    return {ru * rms(d.scattered_active), ru * rms(d.reactive), ru * rms(d.iliovici),
            ru * rms(d.scattered_reactive)};
}

// The per-harmonic measurement pair (P_n, Q_n) of the two test circuits:
// P_n = <u_n, i> and Q_n = -(1/2pi) int du_n i dt, which equals Q_In.
inline std::map<int, std::pair<double, double>>
per_harmonic_measurements(const HarmonicSignal& u, const HarmonicSignal& i) {
    std::map<int, std::pair<double, double>> out;
    if (u.dc() != 0.0) out.emplace(0, std::pair{u.dc() * i.dc(), 0.0});
    for (const auto& [n, tu] : u.terms()) {
        const HarmonicTerm ti = i.term(n);
        const double pn = tu.a * ti.a + tu.b * ti.b;
        out.emplace(n, std::pair{pn, iliovici_per_harmonic(u, i, n)});
    }
    return out;
}

inline LoadCharacter classify_load(double g_e, double b_e) {
    LoadCharacter c;
    c.flow = g_e < 0.0 ? PowerFlow::active : PowerFlow::passive;
    if (std::abs(b_e) <= 1e-12)
        c.reactance = ReactiveCharacter::resistive;
    else
        c.reactance = b_e < 0.0 ? ReactiveCharacter::inductive : ReactiveCharacter::capacitive;
    return c;
}

// Full report for a voltage/current pair. Requires a nonzero voltage with
// AC content and a nonzero current (PF needs S > 0).
inline PowerReport power_report(const HarmonicSignal& u, const HarmonicSignal& i) {
    PowerReport r;
    r.P = active_power(u, i);
    r.S = apparent_power(u, i);
    if (r.S == 0.0) throw ZeroSignal("power_report: apparent power is zero");
    r.PF = r.P / r.S;
    std::tie(r.Q_B, r.D_B) = budeanu(u, i);
    const Decomposition d = decompose(u, i);
    r.Q_F = rms(u) * rms(d.fryze());
    const CpcPowers cp = cpc_powers(u, d);
    r.D_s = cp.D_s;
    r.Q_r = cp.Q_r;
    r.Q_i = cp.Q_i;
    r.Q_s = cp.Q_s;
    r.Q_I = iliovici_total(u, i);
    r.G_e = equivalent_conductance(u, i);
    r.B_e = equivalent_susceptance(u, i);
    r.character = classify_load(r.G_e, r.B_e);
    for (const auto& [n, tu] : u.terms()) {
        const HarmonicTerm ti = i.term(n);
        HarmonicPowers h;
        h.P_n = tu.a * ti.a + tu.b * ti.b;
        h.Q_n = detail::harmonic_reactive(tu, ti);
        h.Q_In = static_cast<double>(n) * h.Q_n;
        h.G_n = per_harmonic_conductance(u, i, n);
        h.B_n = per_harmonic_susceptance(u, i, n);
        r.per_harmonic.emplace(n, h);
    }
    return r;
}

} // namespace cpc
