/*
 * circuit_file.hpp: JSON circuit descriptions.
 *
 * Schema:
 *   {
 *     "omega": 1.0,
 *     "source": { "dc": 0.0,
 *                 "harmonics": [ { "n": 1, "a": 10.0, "b": 0.0 }, ... ] },
 *     "load": <element>
 *   }
 * where <element> is one of
 *   { "R": ohms } | { "L": henries } | { "C": farads }
 *   { "series":   [ <element>, ... ] }
 *   { "parallel": [ <element>, ... ] }
 *   { "admittance_table": [ { "n": 0, "g": 1.0, "b": 0.0 }, ... ] }
 */
#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpc/errors.hpp"
#include "cpc/netlist.hpp"
#include "cpc/spectrum.hpp"

namespace cpc {

struct CircuitFile {
    HarmonicSignal source;
    Network load;
};

namespace detail {

using json = nlohmann::json;

inline double number_field(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ParseError("expected numeric field \"" + key + "\"");
    return j.at(key).get<double>();
}

inline Network parse_load(const json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ParseError("load element must be an object with exactly one key");
    const auto it = j.begin();
    const std::string key = it.key();
    const json& value = it.value();
    try {
        if (key == "R") return Network::resistor(value.get<double>());
        if (key == "L") return Network::inductor(value.get<double>());
        if (key == "C") return Network::capacitor(value.get<double>());
        if (key == "series" || key == "parallel") {
            if (!value.is_array() || value.empty())
                throw ParseError("\"" + key + "\" must be a non-empty array");
            std::vector<Network> parts;
            parts.reserve(value.size());
            for (const auto& child : value) parts.push_back(parse_load(child));
            return key == "series" ? Network::series(std::move(parts))
                                   : Network::parallel(std::move(parts));
        }
        if (key == "admittance_table") {
            if (!value.is_array() || value.empty())
                throw ParseError("\"admittance_table\" must be a non-empty array");
            std::map<int, std::complex<double>> table;
            for (const auto& row : value) {
                const int n = static_cast<int>(number_field(row, "n"));
                if (n < 0) throw ParseError("admittance table order must be >= 0");
                const auto [it, inserted] = table.emplace(
                    n, std::complex<double>{number_field(row, "g"), number_field(row, "b")});
                if (!inserted)
                    throw ParseError("duplicate admittance table order " + std::to_string(n));
            }
            return Network::admittance_table(std::move(table));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid load element: ") + e.what());
    } catch (const Error& e) {
        throw ParseError(std::string("invalid load element: ") + e.what());
    }
    throw ParseError("unknown load element key \"" + key + "\"");
}

inline json load_to_json(const Network& net) {
    switch (net.kind()) {
    case Network::Kind::resistor: return json{{"R", net.element_value()}};
    case Network::Kind::inductor: return json{{"L", net.element_value()}};
    case Network::Kind::capacitor: return json{{"C", net.element_value()}};
    case Network::Kind::series:
    case Network::Kind::parallel: {
        json parts = json::array();
        for (const auto& child : net.children()) parts.push_back(load_to_json(child));
        return json{{net.kind() == Network::Kind::series ? "series" : "parallel",
                     std::move(parts)}};
    }
    case Network::Kind::table: {
        json rows = json::array();
        for (const auto& [n, y] : net.table())
            rows.push_back(json{{"n", n}, {"g", y.real()}, {"b", y.imag()}});
        return json{{"admittance_table", std::move(rows)}};
    }
    }
    throw Error("unreachable network kind");
}

} // namespace detail

inline CircuitFile parse_circuit(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("circuit file must be a JSON object");
    const double omega = detail::number_field(j, "omega");
    if (!(omega > 0.0)) throw ParseError("\"omega\" must be positive");
    if (!j.contains("source") || !j.at("source").is_object())
        throw ParseError("missing \"source\" object");
    const auto& src = j.at("source");
    double dc = 0.0;
    if (src.contains("dc")) dc = detail::number_field(src, "dc");
    std::map<int, HarmonicTerm> terms;
    if (src.contains("harmonics")) {
        if (!src.at("harmonics").is_array())
            throw ParseError("\"harmonics\" must be an array");
        for (const auto& row : src.at("harmonics")) {
            const int n = static_cast<int>(detail::number_field(row, "n"));
            if (n < 1) throw ParseError("harmonic orders must be >= 1");
            const auto [it, inserted] = terms.emplace(
                n, HarmonicTerm{detail::number_field(row, "a"), detail::number_field(row, "b")});
            if (!inserted) throw ParseError("duplicate harmonic order " + std::to_string(n));
        }
    }
    if (!j.contains("load")) throw ParseError("missing \"load\" object");
    Network load = detail::parse_load(j.at("load"));
    try {
        return CircuitFile{HarmonicSignal(omega, dc, std::move(terms)), std::move(load)};
    } catch (const Error& e) {
        throw ParseError(std::string("invalid source: ") + e.what());
    }
}

inline nlohmann::json circuit_to_json(const CircuitFile& circuit) {
    nlohmann::json harmonics = nlohmann::json::array();
    for (const auto& [n, t] : circuit.source.terms())
        harmonics.push_back({{"n", n}, {"a", t.a}, {"b", t.b}});
    return nlohmann::json{
        {"omega", circuit.source.omega()},
        {"source", {{"dc", circuit.source.dc()}, {"harmonics", std::move(harmonics)}}},
        {"load", detail::load_to_json(circuit.load)}};
}

inline CircuitFile load_circuit(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open circuit file: " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_circuit(j);
}

} // namespace cpc
