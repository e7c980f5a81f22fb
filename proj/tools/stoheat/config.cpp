#include "config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "stoheat/types.hpp"

namespace stoheat::cli {

namespace {

using nlohmann::ordered_json;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "command", "p",       "T",       "N",    "m_max", "rel_tol",
        "quad_order", "samples", "workers", "seed", "out",   "format",
    };
    return keys;
}

[[noreturn]] void type_error(const std::string& path, const std::string& expected,
                             const ordered_json& got) {
    throw UsageError("configuration field '" + path + "': expected " + expected + ", got " +
                     got.dump());
}

double as_number(const ordered_json& v, const std::string& path) {
    if (!v.is_number()) type_error(path, "a number", v);
    return v.get<double>();
}

template <class UInt>
UInt as_uint(const ordered_json& v, const std::string& path) {
    if (!v.is_number_unsigned() ||
        v.get<std::uint64_t>() > std::numeric_limits<UInt>::max())
        type_error(path, "a non-negative integer within range", v);
    return static_cast<UInt>(v.get<std::uint64_t>());
}

std::string as_string(const ordered_json& v, const std::string& path) {
    if (!v.is_string()) type_error(path, "a string", v);
    return v.get<std::string>();
}

} // namespace

ExperimentConfig parse_config(const std::string& text, const ExperimentConfig& base) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("configuration document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw UsageError("configuration document must be a JSON object");

    std::vector<std::string> unknown;
    for (const auto& item : doc.items())
        if (known_keys().find(item.key()) == known_keys().end()) unknown.push_back(item.key());
    if (!unknown.empty()) {
        std::ostringstream os;
        os << "unknown configuration keys:";
        for (const auto& k : unknown) os << " '" << k << "'";
        throw UsageError(os.str());
    }

    ExperimentConfig cfg = base;
    if (doc.contains("command")) cfg.command = as_string(doc["command"], "command");
    if (doc.contains("p")) {
        if (!doc["p"].is_array()) type_error("p", "an array of numbers", doc["p"]);
        cfg.p.clear();
        std::size_t i = 0;
        for (const auto& v : doc["p"])
            cfg.p.push_back(as_number(v, "p[" + std::to_string(i++) + "]"));
    }
    if (doc.contains("T")) cfg.T = as_number(doc["T"], "T");
    if (doc.contains("N")) {
        if (!doc["N"].is_array()) type_error("N", "an array of positive integers", doc["N"]);
        cfg.N.clear();
        std::size_t i = 0;
        for (const auto& v : doc["N"])
            cfg.N.push_back(as_uint<std::uint32_t>(v, "N[" + std::to_string(i++) + "]"));
    }
    if (doc.contains("m_max")) cfg.series.m_max = as_uint<std::uint32_t>(doc["m_max"], "m_max");
    if (doc.contains("rel_tol")) cfg.series.rel_tol = as_number(doc["rel_tol"], "rel_tol");
    if (doc.contains("quad_order"))
        cfg.series.quad_order = as_uint<unsigned>(doc["quad_order"], "quad_order");
    if (doc.contains("samples")) cfg.samples = as_uint<std::uint64_t>(doc["samples"], "samples");
    if (doc.contains("workers")) cfg.workers = as_uint<std::uint32_t>(doc["workers"], "workers");
    if (doc.contains("seed")) cfg.seed = as_uint<std::uint64_t>(doc["seed"], "seed");
    if (doc.contains("out")) cfg.out = as_string(doc["out"], "out");
    if (doc.contains("format")) cfg.format = as_string(doc["format"], "format");
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    ordered_json doc;
    doc["command"] = cfg.command;
    doc["p"] = cfg.p;
    doc["T"] = cfg.T;
    doc["N"] = cfg.N;
    doc["m_max"] = cfg.series.m_max;
    doc["rel_tol"] = cfg.series.rel_tol;
    doc["quad_order"] = cfg.series.quad_order;
    doc["samples"] = cfg.samples;
    doc["workers"] = cfg.workers;
    doc["seed"] = cfg.seed;
    doc["out"] = cfg.out;
    doc["format"] = cfg.format;
    return doc.dump(2) + "\n";
}

bool needs_unit_step_bound(const std::string& command) {
    return command == "weak-error" || command == "rate" || command == "decompose" ||
           command == "strong-error";
}

void validate_config(const ExperimentConfig& cfg) {
    static const std::array<const char*, 6> commands = {
        "weak-error", "rate", "decompose", "mc-validate", "bounds", "strong-error"};
    if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
        throw UsageError("unknown command '" + cfg.command +
                         "' (expected weak-error | rate | decompose | mc-validate | bounds | "
                         "strong-error)");

    if (cfg.p.empty()) throw UsageError("p list must not be empty");
    for (double pv : cfg.p) {
        try {
            SobolevOrder check(pv);
        } catch (const std::domain_error& e) {
            throw UsageError(e.what());
        }
    }

    if (!(cfg.T > 0.0) || !std::isfinite(cfg.T))
        throw UsageError("T must be positive and finite, got " + std::to_string(cfg.T));

    if (cfg.N.empty()) throw UsageError("N list must not be empty");
    for (std::uint32_t n : cfg.N)
        if (n == 0) throw UsageError("N entries must be at least 1");

    if (needs_unit_step_bound(cfg.command)) {
        for (std::uint32_t n : cfg.N)
            if (!(cfg.T / n < 1.0))
                throw UsageError("command '" + cfg.command + "' requires h = T/N < 1, violated by T=" +
                                 std::to_string(cfg.T) + ", N=" + std::to_string(n));
    }
    if (cfg.command == "rate" || cfg.command == "strong-error") {
        std::set<std::uint32_t> distinct(cfg.N.begin(), cfg.N.end());
        if (distinct.size() < 2)
            throw UsageError("command '" + cfg.command +
                             "' fits a slope and needs at least two distinct N values");
    }

    try {
        validate(cfg.series);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    if (cfg.samples == 0 || cfg.samples > 0xffffffffULL)
        throw UsageError("samples must be in [1, 2^32 - 1], got " + std::to_string(cfg.samples));
    if (cfg.workers == 0 || cfg.workers > 256)
        throw UsageError("workers must be in [1, 256], got " + std::to_string(cfg.workers));

    if (cfg.format != "csv" && cfg.format != "json")
        throw UsageError("format must be 'csv' or 'json', got '" + cfg.format + "'");
    if (cfg.out.empty()) throw UsageError("output path must not be empty (use '-' for stdout)");
}

} // namespace stoheat::cli
