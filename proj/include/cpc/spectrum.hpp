/*
 * spectrum.hpp: periodic band-limited signals and their algebra.
 *
 * A signal is stored as a DC value plus a finite set of harmonics of a
 * fundamental frequency w, with rms-scaled coefficients:
 *
 *     s(t) = dc + sum_n sqrt(2) * (a_n cos(n w t) + b_n sin(n w t))
 *
 * so the rms of harmonic n is sqrt(a_n^2 + b_n^2) and
 * rms(s)^2 = dc^2 + sum_n (a_n^2 + b_n^2) (Parseval).
 *
 * The complex rms phasor of harmonic n is a_n - j b_n, chosen so that
 * multiplying by an admittance G + jB with B < 0 (an inductive load)
 * yields a lagging current with positive reactive power.
 */
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "cpc/errors.hpp"

namespace cpc {

using Phasor = std::complex<double>;

// Coefficients below this magnitude (absolute) count as zero; a harmonic
// whose coefficients are both below it is dropped from the term map.
inline constexpr double coeff_prune_tolerance = 1e-12;

struct HarmonicTerm {
    double a = 0.0; // rms-scaled cosine coefficient
    double b = 0.0; // rms-scaled sine coefficient

    friend bool operator==(const HarmonicTerm&, const HarmonicTerm&) = default;
};

inline Phasor term_phasor(const HarmonicTerm& t) { return {t.a, -t.b}; }
inline HarmonicTerm phasor_term(Phasor p) { return {p.real(), -p.imag()}; }

class HarmonicSignal {
  public:
    explicit HarmonicSignal(double omega, double dc = 0.0,
                            std::map<int, HarmonicTerm> terms = {})
        : omega_(omega), dc_(dc), terms_(std::move(terms)) {
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw Error("HarmonicSignal: omega must be positive and finite");
        if (!std::isfinite(dc))
            throw Error("HarmonicSignal: DC value must be finite");
        for (auto it = terms_.begin(); it != terms_.end();) {
            auto& [n, term] = *it;
            if (n < 1)
                throw Error("HarmonicSignal: harmonic orders must be >= 1");
            if (!std::isfinite(term.a) || !std::isfinite(term.b))
                throw Error("HarmonicSignal: coefficients must be finite");
            if (std::abs(term.a) < coeff_prune_tolerance &&
                std::abs(term.b) < coeff_prune_tolerance) {
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
        if (std::abs(dc_) < coeff_prune_tolerance) dc_ = 0.0;
    }

    double omega() const { return omega_; }
    double dc() const { return dc_; }
    double period() const { return 2.0 * std::numbers::pi / omega_; }
    const std::map<int, HarmonicTerm>& terms() const { return terms_; }

    int max_order() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
    bool is_zero() const { return dc_ == 0.0 && terms_.empty(); }
    bool has_ac() const { return !terms_.empty(); }

    HarmonicTerm term(int n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? HarmonicTerm{} : it->second;
    }

    // New signal containing only harmonic n of this one (n = 0 selects DC).
    HarmonicSignal component(int n) const {
        if (n == 0) return HarmonicSignal(omega_, dc_);
        std::map<int, HarmonicTerm> t;
        if (auto it = terms_.find(n); it != terms_.end()) t.emplace(n, it->second);
        return HarmonicSignal(omega_, 0.0, std::move(t));
    }

    // Instantaneous value; exact to machine precision for any t.
    double operator()(double t) const {
        double v = dc_;
        for (const auto& [n, term] : terms_) {
            const double phase = static_cast<double>(n) * omega_ * t;
            v += std::numbers::sqrt2 * (term.a * std::cos(phase) + term.b * std::sin(phase));
        }
        return v;
    }

    friend bool operator==(const HarmonicSignal&, const HarmonicSignal&) = default;

  private:
    double omega_;
    double dc_;
    std::map<int, HarmonicTerm> terms_;
};

namespace detail {

inline void require_same_omega(const HarmonicSignal& s1, const HarmonicSignal& s2) {
    const double scale = std::max(std::abs(s1.omega()), std::abs(s2.omega()));
    if (std::abs(s1.omega() - s2.omega()) > 1e-12 * scale)
        throw OmegaMismatch("signals have different fundamental frequencies");
}

} // namespace detail

inline double rms(const HarmonicSignal& s) {
    double sum = s.dc() * s.dc();
    for (const auto& [n, t] : s.terms()) sum += t.a * t.a + t.b * t.b;
    return std::sqrt(sum);
}

inline HarmonicSignal operator+(const HarmonicSignal& s1, const HarmonicSignal& s2) {
    detail::require_same_omega(s1, s2);
    std::map<int, HarmonicTerm> terms = s1.terms();
    for (const auto& [n, t] : s2.terms()) {
        auto [it, inserted] = terms.emplace(n, t);
        if (!inserted) {
            it->second.a += t.a;
            it->second.b += t.b;
        }
    }
    return HarmonicSignal(s1.omega(), s1.dc() + s2.dc(), std::move(terms));
}

inline HarmonicSignal operator*(const HarmonicSignal& s, double k) {
    std::map<int, HarmonicTerm> terms;
    for (const auto& [n, t] : s.terms()) terms.emplace(n, HarmonicTerm{t.a * k, t.b * k});
    return HarmonicSignal(s.omega(), s.dc() * k, std::move(terms));
}

inline HarmonicSignal operator*(double k, const HarmonicSignal& s) { return s * k; }

inline HarmonicSignal operator-(const HarmonicSignal& s1, const HarmonicSignal& s2) {
    return s1 + s2 * -1.0;
}

inline HarmonicSignal add(const HarmonicSignal& s1, const HarmonicSignal& s2) { return s1 + s2; }
inline HarmonicSignal scale(const HarmonicSignal& s, double k) { return s * k; }

// d/dt: the DC term vanishes and (a_n, b_n) -> (n w b_n, -n w a_n).
inline HarmonicSignal differentiate(const HarmonicSignal& s) {
    std::map<int, HarmonicTerm> terms;
    for (const auto& [n, t] : s.terms()) {
        const double nw = static_cast<double>(n) * s.omega();
        terms.emplace(n, HarmonicTerm{nw * t.b, -nw * t.a});
    }
    return HarmonicSignal(s.omega(), 0.0, std::move(terms));
}

// Average of the product over one period: (1/T) int s1 s2 dt.
// Spectrally dc1*dc2 + sum_n (a1 a2 + b1 b2); symmetric and bilinear.
inline double inner(const HarmonicSignal& s1, const HarmonicSignal& s2) {
    detail::require_same_omega(s1, s2);
    double sum = s1.dc() * s2.dc();
    const auto& t2 = s2.terms();
    for (const auto& [n, t] : s1.terms()) {
        auto it = t2.find(n);
        if (it != t2.end()) sum += t.a * it->second.a + t.b * it->second.b;
    }
    return sum;
}

struct SampledSignal {
    std::vector<double> time;  // M equally spaced points covering [0, T)
    std::vector<double> value; // signal values at those points
};

// M samples over one fundamental period. Requires M > 2 * max order so the
// samples determine the signal (and periodic trapezoid sums are exact).
inline SampledSignal sample(const HarmonicSignal& s, std::size_t samples) {
    if (samples <= 2 * static_cast<std::size_t>(s.max_order()) || samples == 0)
        throw NyquistViolation("sample count must exceed twice the highest harmonic order");
    SampledSignal out;
    out.time.resize(samples);
    out.value.resize(samples);
    const double dt = s.period() / static_cast<double>(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        out.time[k] = static_cast<double>(k) * dt;
        out.value[k] = s(out.time[k]);
    }
    return out;
}

} // namespace cpc
