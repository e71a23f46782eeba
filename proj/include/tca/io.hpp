#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tca/core.hpp"
#include "tca/pseudo.hpp"

namespace tca {

using json = nlohmann::json;

namespace detail {

inline json groups_to_json(const std::optional<GroupTags>& g) {
    if (!g) return nullptr;
    json j = json::object();
    for (const auto& [k, v] : *g) j[k] = v;
    return j;
}

inline std::optional<GroupTags> groups_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    GroupTags g;
    for (const auto& [k, v] : j.items()) g[k] = v.get<std::string>();
    return g;
}

}  // namespace detail

// One record per line: {"x":[...], "a":0|1, "y":..., "t":"..."|null,
// "tau_true":...|null, "groups":{...}|null}. Test records carry x = null.

inline json to_json(const TrainRecord& r) {
    json j;
    j["x"] = r.x;
    j["a"] = r.a;
    j["y"] = r.y;
    j["t"] = r.surrogate ? json(r.surrogate->text) : json(nullptr);
    j["tau_true"] = r.tau_true ? json(*r.tau_true) : json(nullptr);
    j["groups"] = detail::groups_to_json(r.groups);
    return j;
}

inline json to_json(const TestRecord& r) {
    json j;
    j["x"] = nullptr;
    j["a"] = r.a;
    j["y"] = r.y;
    j["t"] = r.t.text;
    j["tau_true"] = r.tau_true ? json(*r.tau_true) : json(nullptr);
    j["groups"] = detail::groups_to_json(r.groups);
    return j;
}

template <typename Record>
void write_jsonl(const Dataset<Record>& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& r : ds.records) out << to_json(r).dump() << '\n';
}

namespace detail {

inline json parse_line(const std::string& line, std::size_t lineno, const std::string& path) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": parse error: " + e.what());
    }
}

}  // namespace detail

inline TrainDataset read_train_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    TrainDataset ds;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json j = detail::parse_line(line, lineno, path);
        TrainRecord r;
        if (!j.contains("x") || j["x"].is_null()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": training record lacks covariates");
        }
        r.x = j["x"].get<std::vector<double>>();
        r.a = j.at("a").get<int>();
        r.y = j.at("y").get<double>();
        if (j.contains("t") && !j["t"].is_null()) {
            TextSurrogate s;
            s.text = j["t"].get<std::string>();
            s.leaked_mask.assign(r.x.size(), true);  // provenance not serialized
            r.surrogate = std::move(s);
        }
        if (j.contains("tau_true") && !j["tau_true"].is_null()) {
            r.tau_true = j["tau_true"].get<double>();
        }
        if (j.contains("groups")) r.groups = detail::groups_from_json(j["groups"]);
        if (ds.records.empty()) ds.d_x = r.x.size();
        ds.records.push_back(std::move(r));
    }
    return ds;
}

inline TestDataset read_test_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    TestDataset ds;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json j = detail::parse_line(line, lineno, path);
        TestRecord r;
        if (!j.contains("t") || j["t"].is_null()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": test record lacks text");
        }
        r.t.text = j["t"].get<std::string>();
        r.a = j.at("a").get<int>();
        r.y = j.at("y").get<double>();
        if (j.contains("tau_true") && !j["tau_true"].is_null()) {
            r.tau_true = j["tau_true"].get<double>();
        }
        if (j.contains("groups")) r.groups = detail::groups_from_json(j["groups"]);
        ds.records.push_back(std::move(r));
    }
    return ds;
}

inline const char* to_string(PseudoKind k) {
    switch (k) {
        case PseudoKind::DR: return "DR";
        case PseudoKind::RA: return "RA";
        case PseudoKind::PW: return "PW";
    }
    return "DR";
}

// Diagnostic stream mirroring the per-record pseudo-outcome decomposition.
inline void write_pseudo_jsonl(const std::vector<PseudoOutcome>& ps, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& p : ps) {
        json j;
        j["value"] = p.value;
        j["kind"] = to_string(p.kind);
        j["mu1_hat"] = p.components.mu1_hat;
        j["mu0_hat"] = p.components.mu0_hat;
        j["pi_hat"] = p.components.pi_hat;
        j["residual_term_1"] = p.components.residual_term_1;
        j["residual_term_0"] = p.components.residual_term_0;
        out << j.dump() << '\n';
    }
}

}  // namespace tca
