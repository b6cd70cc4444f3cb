/*
 * decomposition.hpp: orthogonal decompositions of a load current.
 *
 * Given a periodic source voltage u and the load current i, the current is
 * split into components tied to distinct load phenomena:
 *
 *   i_a  active             (P / ||u||^2) u          permanent conversion
 *   i_s  scattered active   sum (G_n - G_e) u_n      conductance varies with n
 *   i_r  reactive           sum <i,du_n>/||du_n||^2 du_n   phase shift
 *   i_I  Iliovici           [sum <i,du_n>]/||du||^2 du     average reactive part
 *   i_sr scattered reactive i_r - i_I                susceptance varies with n
 *
 * All projections are evaluated spectrally (closed form through inner);
 * sampled quadrature exists only as a test oracle. Every projection is onto
 * the voltage harmonics u_n and their derivatives du_n, which form an
 * orthogonal family, so {i_a, i_s, i_r} and {i_I, i_sr} are pairwise
 * orthogonal and i_a + i_s + i_r recovers the part of i supported on the
 * voltage harmonics. Current content outside that support (non-LTI
 * behaviour) lands in the residual.
 */
#pragma once

#include <cmath>
#include <map>

#include "cpc/errors.hpp"
#include "cpc/netlist.hpp"
#include "cpc/spectrum.hpp"

namespace cpc {

struct Decomposition {
    HarmonicSignal current;            // the analyzed current i
    HarmonicSignal active;             // i_a
    HarmonicSignal scattered_active;   // i_s (also written i_sa)
    HarmonicSignal reactive;           // i_r
    HarmonicSignal iliovici;           // i_I
    HarmonicSignal scattered_reactive; // i_sr = i_r - i_I
    HarmonicSignal residual;           // i - i_a - i_s - i_r
    bool residual_significant = false; // rms(residual) > 1e-6 rms(i)

    // Fryze non-active current i_F = i - i_a.
    HarmonicSignal fryze() const { return current - active; }
    // Conductance current i_g = i_a + i_s (all resistive-branch power).
    HarmonicSignal conductance() const { return active + scattered_active; }
};

namespace detail {

inline double squared_rms(const HarmonicSignal& s) {
    const double r = rms(s);
    return r * r;
}

} // namespace detail

// i_a = (P / ||u||^2) u with P = <u, i>.
inline HarmonicSignal active_current(const HarmonicSignal& u, const HarmonicSignal& i) {
    const double uu = detail::squared_rms(u);
    if (uu == 0.0) throw ZeroSignal("active_current: source voltage is zero");
    return u * (inner(u, i) / uu);
}

// G_n = <u_n, i> / ||u_n||^2; n = 0 uses the DC term.
inline double per_harmonic_conductance(const HarmonicSignal& u, const HarmonicSignal& i, int n) {
    const HarmonicSignal un = u.component(n);
    const double unn = detail::squared_rms(un);
    if (unn == 0.0)
        throw ZeroSignal("per_harmonic_conductance: harmonic " + std::to_string(n) +
                         " absent from the voltage");
    return inner(un, i) / unn;
}

// i_s = sum_{n in N'} (G_n - G_e) u_n, DC included.
inline HarmonicSignal scattered_current(const HarmonicSignal& u, const HarmonicSignal& i) {
    const double uu = detail::squared_rms(u);
    if (uu == 0.0) throw ZeroSignal("scattered_current: source voltage is zero");
    const double ge = inner(u, i) / uu;
    double dc = 0.0;
    if (u.dc() != 0.0) dc = (i.dc() / u.dc() - ge) * u.dc();
    std::map<int, HarmonicTerm> terms;
    for (const auto& [n, t] : u.terms()) {
        const double un2 = t.a * t.a + t.b * t.b;
        const HarmonicTerm ti = i.term(n);
        const double gn = (t.a * ti.a + t.b * ti.b) / un2;
        terms.emplace(n, HarmonicTerm{(gn - ge) * t.a, (gn - ge) * t.b});
    }
    return HarmonicSignal(u.omega(), dc, std::move(terms));
}

// B_n = n w <i, du_n> / ||du_n||^2 for n >= 1; B_0 is zero by convention.
inline double per_harmonic_susceptance(const HarmonicSignal& u, const HarmonicSignal& i, int n) {
    if (n == 0) return 0.0;
    const HarmonicSignal dun = differentiate(u.component(n));
    const double dd = detail::squared_rms(dun);
    if (dd == 0.0)
        throw ZeroSignal("per_harmonic_susceptance: harmonic " + std::to_string(n) +
                         " absent from the voltage");
    return static_cast<double>(n) * u.omega() * inner(i, dun) / dd;
}

// i_r = sum_{n in N} <i, du_n>/||du_n||^2 du_n. A DC-only voltage has an
// empty projection set and yields the zero signal.
inline HarmonicSignal reactive_current(const HarmonicSignal& u, const HarmonicSignal& i) {
    std::map<int, HarmonicTerm> terms;
    for (const auto& [n, t] : u.terms()) {
        const double nw = static_cast<double>(n) * u.omega();
        const HarmonicTerm du{nw * t.b, -nw * t.a};
        const double dd = du.a * du.a + du.b * du.b;
        const HarmonicTerm ti = i.term(n);
        const double c = (ti.a * du.a + ti.b * du.b) / dd;
        terms.emplace(n, HarmonicTerm{c * du.a, c * du.b});
    }
    return HarmonicSignal(u.omega(), 0.0, std::move(terms));
}

// i_I = [sum_n <i, du_n>] / ||du||^2 du: one projection onto the full du.
inline HarmonicSignal iliovici_current(const HarmonicSignal& u, const HarmonicSignal& i) {
    const HarmonicSignal du = differentiate(u);
    const double dd = detail::squared_rms(du);
    if (dd == 0.0) throw ZeroSignal("iliovici_current: voltage has no AC content");
    return du * (inner(i, du) / dd);
}

// i_sr = i_r - i_I.
inline HarmonicSignal scattered_reactive_current(const HarmonicSignal& u,
                                                 const HarmonicSignal& i) {
    return reactive_current(u, i) - iliovici_current(u, i);
}

inline Decomposition decompose(const HarmonicSignal& u, const HarmonicSignal& i) {
    const double uu = detail::squared_rms(u);
    if (uu == 0.0) throw ZeroSignal("decompose: source voltage is zero");
    HarmonicSignal i_a = active_current(u, i);
    HarmonicSignal i_s = scattered_current(u, i);
    HarmonicSignal i_r = reactive_current(u, i);
    HarmonicSignal i_I = u.has_ac() ? iliovici_current(u, i) : HarmonicSignal(u.omega());
    HarmonicSignal i_sr = i_r - i_I;
    HarmonicSignal residual = i - i_a - i_s - i_r;
    const double ri = rms(i);
    const bool significant = rms(residual) > 1e-6 * ri;
    return Decomposition{i, std::move(i_a), std::move(i_s),  std::move(i_r),
                         std::move(i_I),    std::move(i_sr), std::move(residual),
                         significant};
}

// Admittance-route (hybrid) forms of the scattered and reactive currents,
// computed from the load model instead of the measured current. For an LTI
// load they agree with the projection forms above to roundoff.

inline HarmonicSignal scattered_current_from_admittance(const HarmonicSignal& u,
                                                        const Network& load) {
    const double uu = detail::squared_rms(u);
    if (uu == 0.0) throw ZeroSignal("scattered_current_from_admittance: zero voltage");
    const HarmonicSignal i = load.steady_state_current(u);
    const double ge = inner(u, i) / uu;
    double dc = 0.0;
    if (u.dc() != 0.0) dc = (load.admittance(0, u.omega()).real() - ge) * u.dc();
    std::map<int, HarmonicTerm> terms;
    for (const auto& [n, t] : u.terms()) {
        const double gn = load.admittance(n, u.omega()).real();
        terms.emplace(n, HarmonicTerm{(gn - ge) * t.a, (gn - ge) * t.b});
    }
    return HarmonicSignal(u.omega(), dc, std::move(terms));
}

inline HarmonicSignal reactive_current_from_admittance(const HarmonicSignal& u,
                                                       const Network& load) {
    std::map<int, HarmonicTerm> terms;
    for (const auto& [n, t] : u.terms()) {
        const double bn = load.admittance(n, u.omega()).imag();
        const Phasor p = Phasor{0.0, bn} * term_phasor(t); // jB_n U_n
        terms.emplace(n, phasor_term(p));
    }
    return HarmonicSignal(u.omega(), 0.0, std::move(terms));
}

} // namespace cpc
