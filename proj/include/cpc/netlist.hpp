/*
 * netlist.hpp: LTI one-port load models and steady-state response.
 *
 * A Network is either a series/parallel tree of ideal R, L, C elements or a
 * table of per-harmonic admittances. Evaluation at harmonic n of a
 * fundamental w returns Y(j n w) = G + jB; the steady-state current drawn
 * from a voltage source follows per harmonic from I_n = Y_n U_n.
 *
 * DC (n = 0) is evaluated by limits: an inductor is a short, a capacitor an
 * open. Shorts and opens propagate symbolically through the tree, so a
 * series R-L is finite at DC while a bare inductor across the port is not;
 * only a diverging total raises SingularAdmittance.
 */
#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "cpc/errors.hpp"
#include "cpc/spectrum.hpp"

namespace cpc {

class Network {
  public:
    enum class Kind { resistor, inductor, capacitor, series, parallel, table };

    static Network resistor(double ohms) { return element(Kind::resistor, ohms); }
    static Network inductor(double henries) { return element(Kind::inductor, henries); }
    static Network capacitor(double farads) { return element(Kind::capacitor, farads); }

    static Network series(std::vector<Network> parts) {
        return combine(Kind::series, std::move(parts));
    }
    static Network parallel(std::vector<Network> parts) {
        return combine(Kind::parallel, std::move(parts));
    }

    static Network admittance_table(std::map<int, std::complex<double>> table) {
        Network net(Kind::table);
        for (const auto& [n, y] : table) {
            if (n < 0) throw Error("admittance table orders must be >= 0");
            if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
                throw Error("admittance table values must be finite");
        }
        net.table_ = std::move(table);
        return net;
    }

    Kind kind() const { return kind_; }
    double element_value() const { return value_; }
    const std::vector<Network>& children() const { return children_; }
    const std::map<int, std::complex<double>>& table() const { return table_; }

    friend bool operator==(const Network&, const Network&) = default;

    // Y(j n w); throws SingularAdmittance when the total diverges or the
    // order is missing from an admittance table.
    std::complex<double> admittance(int order, double omega) const {
        if (order < 0 || !(omega > 0.0))
            throw Error("admittance query needs order >= 0 and omega > 0");
        const Limit y = evaluate(order, omega);
        if (y.shorted)
            throw SingularAdmittance("singular admittance at harmonic order " +
                                     std::to_string(order));
        return y.value;
    }

    bool admittance_finite(int order, double omega) const {
        if (kind_ == Kind::table && !table_.contains(order)) return false;
        return !evaluate(order, omega).shorted;
    }

    // Steady-state current drawn when this one-port is excited by `voltage`:
    // per harmonic I_n = Y_n U_n, at DC i = Re{Y_0} u_dc.
    HarmonicSignal steady_state_current(const HarmonicSignal& voltage) const {
        double dc = 0.0;
        if (voltage.dc() != 0.0) dc = admittance(0, voltage.omega()).real() * voltage.dc();
        std::map<int, HarmonicTerm> terms;
        for (const auto& [n, t] : voltage.terms()) {
            const Phasor i = admittance(n, voltage.omega()) * term_phasor(t);
            terms.emplace(n, phasor_term(i));
        }
        return HarmonicSignal(voltage.omega(), dc, std::move(terms));
    }

    // Shunt attachment: admittances add per harmonic.
    Network parallel_with(Network other) const {
        return parallel({*this, std::move(other)});
    }

  private:
    explicit Network(Kind kind) : kind_(kind) {}

    static Network element(Kind kind, double value) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw Error("element values must be strictly positive and finite");
        Network net(kind);
        net.value_ = value;
        return net;
    }

    static Network combine(Kind kind, std::vector<Network> parts) {
        if (parts.empty()) throw Error("series/parallel combination needs at least one element");
        Network net(kind);
        net.children_ = std::move(parts);
        return net;
    }

    // Admittance with a symbolic short flag. value == 0 encodes an open;
    // shorted == true encodes infinite admittance (zero impedance).
    struct Limit {
        bool shorted = false;
        std::complex<double> value{0.0, 0.0};
    };

    Limit evaluate(int order, double omega) const {
        const double x = static_cast<double>(order) * omega; // evaluation frequency
        switch (kind_) {
        case Kind::resistor:
            return {false, {1.0 / value_, 0.0}};
        case Kind::inductor:
            if (x == 0.0) return {true, {}};
            return {false, {0.0, -1.0 / (x * value_)}};
        case Kind::capacitor:
            return {false, {0.0, x * value_}};
        case Kind::table: {
            auto it = table_.find(order);
            if (it == table_.end())
                throw SingularAdmittance("no tabulated admittance for harmonic order " +
                                         std::to_string(order));
            return {false, it->second};
        }
        case Kind::parallel: {
            std::complex<double> sum{0.0, 0.0};
            for (const auto& child : children_) {
                const Limit y = child.evaluate(order, omega);
                if (y.shorted) return {true, {}};
                sum += y.value;
            }
            return {false, sum};
        }
        case Kind::series: {
            std::complex<double> z{0.0, 0.0};
            for (const auto& child : children_) {
                const Limit y = child.evaluate(order, omega);
                if (y.shorted) continue; // zero impedance contribution
                if (y.value == std::complex<double>{0.0, 0.0})
                    return {false, {0.0, 0.0}}; // an open breaks the path
                z += 1.0 / y.value;
            }
            if (z == std::complex<double>{0.0, 0.0}) return {true, {}};
            return {false, 1.0 / z};
        }
        }
        throw Error("unreachable network kind");
    }

    Kind kind_;
    double value_ = 0.0;
    std::vector<Network> children_;
    std::map<int, std::complex<double>> table_;
};

} // namespace cpc
