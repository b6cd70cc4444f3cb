/*
 * waveform.hpp: sampled-waveform oracles and Lissajous analysis.
 *
 * A Lissajous figure is the closed curve (u(t), i(t)) traced over one
 * fundamental period. Its signed polygon area (shoelace formula) measures
 * (1/wT) closed-int u di times 2pi: anticlockwise loops mean the current
 * lags (inductive, Q_I > 0), clockwise loops mean it leads.
 *
 * Derivatives for the sampled oracles are computed spectrally before
 * sampling, never by finite differences, so the trapezoid sums below are
 * exact for band-limited signals up to roundoff. The polygon area itself is
 * a geometric quantity: harmonic m enters attenuated by sinc(2 pi m / M),
 * so it converges to 2 pi Q_I at second order in 1/M.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "cpc/errors.hpp"
#include "cpc/spectrum.hpp"

namespace cpc {

inline constexpr std::size_t default_sample_count = 4096;

struct Lissajous {
    std::vector<std::array<double, 2>> points; // (u_k, i_k); closes cyclically
    std::string x_label = "u";
    std::string y_label = "i";

    std::size_t samples() const { return points.size(); }
};

enum class Orientation { anticlockwise, clockwise, degenerate };

inline std::string to_string(Orientation o) {
    switch (o) {
    case Orientation::anticlockwise: return "anticlockwise";
    case Orientation::clockwise: return "clockwise";
    case Orientation::degenerate: return "degenerate";
    }
    return "?";
}

inline Lissajous lissajous(const HarmonicSignal& u, const HarmonicSignal& i,
                           std::size_t samples = default_sample_count,
                           std::string x_label = "u", std::string y_label = "i") {
    detail::require_same_omega(u, i);
    const SampledSignal su = sample(u, samples);
    const SampledSignal si = sample(i, samples);
    Lissajous fig;
    fig.points.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) fig.points[k] = {su.value[k], si.value[k]};
    fig.x_label = std::move(x_label);
    fig.y_label = std::move(y_label);
    return fig;
}

// Signed shoelace area (1/2) sum (u_k i_{k+1} - u_{k+1} i_k) over the
// closed contour; equals 2 pi Q_I up to the polygon discretization bias.
inline double loop_area(const Lissajous& fig) {
    const std::size_t m = fig.points.size();
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const auto& p = fig.points[k];
        const auto& q = fig.points[(k + 1) % m];
        sum += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * sum;
}

inline Orientation orientation(const Lissajous& fig) {
    const std::size_t m = fig.points.size();
    if (m == 0) return Orientation::degenerate;
    double uu = 0.0, ii = 0.0;
    for (const auto& p : fig.points) {
        uu += p[0] * p[0];
        ii += p[1] * p[1];
    }
    const double md = static_cast<double>(m);
    const double scale = std::sqrt(uu / md) * std::sqrt(ii / md);
    const double area = loop_area(fig);
    if (std::abs(area) <= 1e-9 * scale) return Orientation::degenerate;
    return area > 0.0 ? Orientation::anticlockwise : Orientation::clockwise;
}

struct SampledPower {
    double P = 0.0;     // trapezoid mean of u i
    double Q_I = 0.0;   // trapezoid of (1/wT) int u di/dt dt
    double rms_u = 0.0;
    double rms_i = 0.0;
};

// Trapezoid-rule counterparts of the spectral P, Q_I and rms values. On a
// uniform periodic grid the trapezoid rule reduces to the plain mean.
inline SampledPower sampled_power_oracles(const HarmonicSignal& u, const HarmonicSignal& i,
                                          std::size_t samples = default_sample_count) {
    detail::require_same_omega(u, i);
    const SampledSignal su = sample(u, samples);
    const SampledSignal si = sample(i, samples);
    const SampledSignal sdi = sample(differentiate(i), samples);
    double p = 0.0, q = 0.0, uu = 0.0, ii = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        p += su.value[k] * si.value[k];
        q += su.value[k] * sdi.value[k];
        uu += su.value[k] * su.value[k];
        ii += si.value[k] * si.value[k];
    }
    const double m = static_cast<double>(samples);
    SampledPower out;
    out.P = p / m;
    out.Q_I = q / (m * u.omega());
    out.rms_u = std::sqrt(uu / m);
    out.rms_i = std::sqrt(ii / m);
    return out;
}

namespace detail {

inline std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// CSV with header "t,u,i", '\n' newlines, '.' decimal point, full double
// precision (17 significant digits).
inline void write_waveform_csv(std::ostream& os, const std::vector<double>& t,
                               const std::vector<double>& u, const std::vector<double>& i) {
    os << "t,u,i\n";
    for (std::size_t k = 0; k < t.size(); ++k)
        os << detail::full_precision(t[k]) << ',' << detail::full_precision(u[k]) << ','
           << detail::full_precision(i[k]) << '\n';
}

// CSV with header "u,i" listing the Lissajous contour points.
inline void write_lissajous_csv(std::ostream& os, const Lissajous& fig) {
    os << "u,i\n";
    for (const auto& p : fig.points)
        os << detail::full_precision(p[0]) << ',' << detail::full_precision(p[1]) << '\n';
}

} // namespace cpc
