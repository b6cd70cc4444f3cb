/*
 * cli.hpp: the `cpc` command-line front end.
 *
 * Subcommands: report, decompose, compensate, lissajous. Exit codes:
 * 0 ok, 2 input error, 3 numeric/singularity, 4 I/O, 5 unsupported
 * compensation. Errors go to the standard error stream. Tables round to 3
 * decimals (half away from zero); json/csv output keeps full precision.
 * The CPC_SAMPLES environment variable overrides the default sample count.
 */
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpc/circuit_file.hpp"
#include "cpc/compensate.hpp"
#include "cpc/cpc.hpp"

namespace cpc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 2;
inline constexpr int exit_numeric = 3;
inline constexpr int exit_io = 4;
inline constexpr int exit_unsupported = 5;

namespace detail {

// Half-away-from-zero rounding at 3 decimals, with -0.000 normalized.
inline std::string fixed3(double v) {
    double r = std::round(v * 1000.0) / 1000.0;
    if (r == 0.0) r = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", r);
    return buf;
}

inline std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ReportRow {
    const char* name;
    double value;
    const char* unit;
};

inline std::vector<ReportRow> report_rows(const PowerReport& r) {
    return {{"P", r.P, "W"},       {"S", r.S, "VA"},     {"PF", r.PF, "-"},
            {"Q_B", r.Q_B, "var"}, {"D_B", r.D_B, "VA"}, {"Q_F", r.Q_F, "VA"},
            {"D_s", r.D_s, "VA"},  {"Q_r", r.Q_r, "var"}, {"Q_i", r.Q_i, "var"},
            {"Q_s", r.Q_s, "var"}, {"Q_I", r.Q_I, "var"}, {"G_e", r.G_e, "S"},
            {"B_e", r.B_e, "S"}};
}

inline void print_report_table(std::ostream& out, const PowerReport& r) {
    out << std::left << std::setw(10) << "Quantity" << std::right << std::setw(12) << "Value"
        << "  Unit\n";
    for (const ReportRow& row : report_rows(r))
        out << std::left << std::setw(10) << row.name << std::right << std::setw(12)
            << fixed3(row.value) << "  " << row.unit << '\n';
    out << std::left << std::setw(10) << "load" << "  " << to_string(r.character) << '\n';
    out << '\n';
    out << "n" << std::right << std::setw(13) << "P_n" << std::setw(12) << "Q_n"
        << std::setw(12) << "Q_In" << std::setw(12) << "G_n" << std::setw(12) << "B_n" << '\n';
    for (const auto& [n, h] : r.per_harmonic)
        out << n << std::right << std::setw(13) << fixed3(h.P_n) << std::setw(12)
            << fixed3(h.Q_n) << std::setw(12) << fixed3(h.Q_In) << std::setw(12)
            << fixed3(h.G_n) << std::setw(12) << fixed3(h.B_n) << '\n';
}

inline nlohmann::json report_json(const PowerReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& [n, h] : r.per_harmonic)
        per.push_back({{"n", n},
                       {"P_n", h.P_n},
                       {"Q_n", h.Q_n},
                       {"Q_In", h.Q_In},
                       {"G_n", h.G_n},
                       {"B_n", h.B_n}});
    nlohmann::json j;
    for (const ReportRow& row : report_rows(r)) j[row.name] = row.value;
    j["load_character"] = to_string(r.character);
    j["per_harmonic"] = std::move(per);
    return j;
}

inline void print_report_csv(std::ostream& out, const PowerReport& r) {
    out << "quantity,value\n";
    for (const ReportRow& row : report_rows(r)) out << row.name << ',' << full(row.value) << '\n';
    out << "load_character," << to_string(r.character) << '\n';
    for (const auto& [n, h] : r.per_harmonic) {
        out << "P_" << n << ',' << full(h.P_n) << '\n';
        out << "Q_" << n << ',' << full(h.Q_n) << '\n';
        out << "Q_I" << n << ',' << full(h.Q_In) << '\n';
        out << "G_" << n << ',' << full(h.G_n) << '\n';
        out << "B_" << n << ',' << full(h.B_n) << '\n';
    }
}

inline void print_before_after(std::ostream& out, const PowerReport& before,
                               const PowerReport& after) {
    const auto rows_b = report_rows(before);
    const auto rows_a = report_rows(after);
    out << std::left << std::setw(10) << "Quantity" << std::right << std::setw(15)
        << "Uncompensated" << std::setw(14) << "Compensated" << "  Unit\n";
    for (std::size_t k = 0; k < rows_b.size(); ++k)
        out << std::left << std::setw(10) << rows_b[k].name << std::right << std::setw(15)
            << fixed3(rows_b[k].value) << std::setw(14) << fixed3(rows_a[k].value) << "  "
            << rows_b[k].unit << '\n';
}

inline std::size_t sample_count_default() {
    if (const char* env = std::getenv("CPC_SAMPLES")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw cpc::ParseError("CPC_SAMPLES must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return default_sample_count;
}

inline const HarmonicSignal& select_component(const std::string& name, const Decomposition& d) {
    if (name == "source") return d.current;
    if (name == "active") return d.active;
    if (name == "scattered") return d.scattered_active;
    if (name == "reactive") return d.reactive;
    if (name == "iliovici") return d.iliovici;
    if (name == "scattered_reactive") return d.scattered_reactive;
    throw cpc::ParseError("unknown pair name \"" + name + "\"");
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    return out;
}

inline void print_coefficients(std::ostream& out, const char* name, const HarmonicSignal& s) {
    if (s.dc() != 0.0)
        out << std::left << std::setw(8) << name << std::right << std::setw(4) << 0
            << std::setw(12) << fixed3(s.dc()) << std::setw(12) << fixed3(0.0) << '\n';
    for (const auto& [n, t] : s.terms())
        out << std::left << std::setw(8) << name << std::right << std::setw(4) << n
            << std::setw(12) << fixed3(t.a) << std::setw(12) << fixed3(t.b) << '\n';
}

inline void cmd_report(std::ostream& out, const CircuitFile& circuit,
                       const std::string& format) {
    const PowerReport r = power_report(circuit.source,
                                       circuit.load.steady_state_current(circuit.source));
    if (format == "table")
        print_report_table(out, r);
    else if (format == "json")
        out << report_json(r).dump(2) << '\n';
    else
        print_report_csv(out, r);
}

inline void cmd_decompose(std::ostream& out, std::ostream& err, const CircuitFile& circuit,
                          const std::string& prefix, std::size_t samples) {
    const HarmonicSignal& u = circuit.source;
    const Decomposition d = decompose(u, circuit.load.steady_state_current(u));
    if (d.residual_significant)
        err << "warning: current has harmonics outside the voltage support; "
               "residual is significant\n";
    const HarmonicSignal i_g = d.conductance();
    const std::pair<const char*, const HarmonicSignal*> components[] = {
        {"ia", &d.active},   {"isa", &d.scattered_active}, {"ir", &d.reactive},
        {"iI", &d.iliovici}, {"isr", &d.scattered_reactive}, {"ig", &i_g},
        {"total", &d.current}};
    const SampledSignal su = sample(u, samples);
    for (const auto& [tag, component] : components) {
        const std::string path = prefix + "_" + tag + ".csv";
        std::ofstream file = open_output(path);
        write_waveform_csv(file, su.time, su.value, sample(*component, samples).value);
        if (!file) throw std::ios_base::failure("write failed for " + path);
        out << "wrote " << path << '\n';
    }
    out << '\n';
    out << std::left << std::setw(8) << "signal" << std::right << std::setw(4) << "n"
        << std::setw(12) << "a" << std::setw(12) << "b" << '\n';
    print_coefficients(out, "i_a", d.active);
    print_coefficients(out, "i_sa", d.scattered_active);
    print_coefficients(out, "i_r", d.reactive);
    print_coefficients(out, "i_I", d.iliovici);
    print_coefficients(out, "i_sr", d.scattered_reactive);
    print_coefficients(out, "i_g", i_g);
    print_coefficients(out, "total", d.current);
}

inline void cmd_compensate(std::ostream& out, std::ostream& err, const CircuitFile& circuit,
                           const std::string& strategy) {
    const HarmonicSignal& u = circuit.source;
    const PowerReport before = power_report(u, circuit.load.steady_state_current(u));
    std::vector<Compensator> comps;
    out << "strategy: " << strategy << '\n';
    if (strategy == "budeanu") {
        comps.push_back(shunt_for_budeanu_null(u, circuit.load));
    } else if (strategy == "iliovici") {
        comps.push_back(shunt_from_equivalent_susceptance(u, circuit.load));
    } else {
        comps.push_back(shunt_from_equivalent_susceptance(u, circuit.load));
        const Decomposition d = decompose(u, circuit.load.steady_state_current(u));
        comps.push_back(series_lc_for_scattered_reactive(u, d.scattered_reactive));
    }
    for (const Compensator& c : comps) {
        switch (c.kind) {
        case Compensator::Kind::none: out << "compensator: none\n"; break;
        case Compensator::Kind::shunt_capacitor:
            out << "shunt capacitor C = " << fixed3(c.capacitance) << " F\n";
            break;
        case Compensator::Kind::shunt_inductor:
            out << "shunt inductor L = " << fixed3(c.inductance) << " H\n";
            break;
        case Compensator::Kind::series_lc:
            out << "series branch L_x = " << fixed3(c.inductance)
                << " H, C_x = " << fixed3(c.capacitance) << " F\n";
            break;
        }
    }
    const PowerReport after = evaluate_with(u, circuit.load, comps);
    out << '\n';
    print_before_after(out, before, after);
    if (after.PF < before.PF) err << "warning: power factor degraded\n";
}

inline void cmd_lissajous(std::ostream& out, const CircuitFile& circuit,
                          const std::vector<std::string>& pairs, const std::string& prefix,
                          std::size_t samples) {
    const HarmonicSignal& u = circuit.source;
    const Decomposition d = decompose(u, circuit.load.steady_state_current(u));
    out << std::left << std::setw(20) << "pair" << std::right << std::setw(14) << "area"
        << std::setw(12) << "area/2pi" << std::setw(12) << "Q_I" << "  orientation\n";
    for (const std::string& name : pairs) {
        const HarmonicSignal component =
            name == "g" ? d.conductance() : select_component(name, d);
        const Lissajous fig = lissajous(u, component, samples, "u", name);
        const std::string path = prefix + "_" + name + ".csv";
        std::ofstream file = open_output(path);
        write_lissajous_csv(file, fig);
        if (!file) throw std::ios_base::failure("write failed for " + path);
        const double area = loop_area(fig);
        out << std::left << std::setw(20) << name << std::right << std::setw(14)
            << fixed3(area) << std::setw(12) << fixed3(area / (2.0 * std::numbers::pi))
            << std::setw(12) << fixed3(iliovici_total(u, component)) << "  "
            << to_string(orientation(fig)) << '\n';
    }
}

} // namespace detail

// Runs the CLI on `args` (program name excluded). Output and error streams
// are injectable so tests can capture them.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-domain power analysis of periodic nonsinusoidal circuits"};
    app.require_subcommand(1);

    std::string circuit_path;
    std::string format = "table";
    std::string strategy;
    std::string prefix;
    std::string pairs_csv = "source";
    std::size_t samples = 0;

    CLI::App* report = app.add_subcommand("report", "Print the power report for a circuit");
    report->add_option("circuit", circuit_path, "circuit JSON file")->required();
    report->add_option("--format", format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    CLI::App* decomp = app.add_subcommand("decompose", "Write current component waveforms");
    decomp->add_option("circuit", circuit_path, "circuit JSON file")->required();
    decomp->add_option("--out", prefix, "output CSV path prefix")->required();
    decomp->add_option("--samples", samples, "samples per period");

    CLI::App* comp = app.add_subcommand("compensate", "Size a compensator and re-evaluate");
    comp->add_option("circuit", circuit_path, "circuit JSON file")->required();
    comp->add_option("--strategy", strategy, "budeanu, iliovici or full")
        ->required()
        ->check(CLI::IsMember({"budeanu", "iliovici", "full"}));

    CLI::App* liss = app.add_subcommand("lissajous", "Export Lissajous figures");
    liss->add_option("circuit", circuit_path, "circuit JSON file")->required();
    liss->add_option("--pairs", pairs_csv, "comma-separated pair names");
    liss->add_option("--samples", samples, "samples per period");
    liss->add_option("--out", prefix, "output CSV path prefix")->required();

    try {
        std::reverse(args.begin(), args.end()); // CLI11 vector parse order
        app.parse(args);
        if (samples == 0) samples = detail::sample_count_default();
        const CircuitFile circuit = load_circuit(circuit_path);
        if (report->parsed()) {
            detail::cmd_report(out, circuit, format);
        } else if (decomp->parsed()) {
            detail::cmd_decompose(out, err, circuit, prefix, samples);
        } else if (comp->parsed()) {
            detail::cmd_compensate(out, err, circuit, strategy);
        } else if (liss->parsed()) {
            std::vector<std::string> pairs;
            std::stringstream ss(pairs_csv);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) pairs.push_back(item);
            if (pairs.empty()) throw cpc::ParseError("--pairs must name at least one pair");
            detail::cmd_lissajous(out, circuit, pairs, prefix, samples);
        }
        return exit_ok;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const cpc::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const UnsupportedCompensator& e) {
        err << "error: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const NonphysicalCompensator& e) {
        err << "error: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const cpc::Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    }
}

} // namespace cpc::cli
