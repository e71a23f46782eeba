#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tca {

enum class PromptFamily { Factual, Narrative, SymptomFocused };

inline const char* to_string(PromptFamily f) {
    switch (f) {
        case PromptFamily::Factual: return "factual";
        case PromptFamily::Narrative: return "narrative";
        case PromptFamily::SymptomFocused: return "symptom";
    }
    return "factual";
}

inline PromptFamily prompt_family_from_string(const std::string& s) {
    if (s == "factual") return PromptFamily::Factual;
    if (s == "narrative") return PromptFamily::Narrative;
    if (s == "symptom") return PromptFamily::SymptomFocused;
    throw std::invalid_argument("unknown prompt family: " + s);
}

struct TextSurrogate {
    std::string text;
    std::vector<bool> leaked_mask;   // which covariate coordinates shaped the text
    PromptFamily family = PromptFamily::SymptomFocused;
};

using GroupTags = std::map<std::string, std::string>;

struct TrainRecord {
    std::vector<double> x;
    int a = 0;
    double y = 0.0;
    std::optional<TextSurrogate> surrogate;
    std::optional<double> tau_true;
    std::optional<GroupTags> groups;
};

struct TestRecord {
    TextSurrogate t;
    int a = 0;
    double y = 0.0;
    std::optional<double> tau_true;
    std::optional<GroupTags> groups;
};

struct DatasetMeta {
    std::uint64_t seed = 0;
    std::map<std::string, double> knobs;  // generation parameters worth echoing
};

template <typename Record>
struct Dataset {
    std::vector<Record> records;
    std::size_t d_x = 0;
    DatasetMeta meta;

    std::size_t size() const { return records.size(); }
};

using TrainDataset = Dataset<TrainRecord>;
using TestDataset = Dataset<TestRecord>;

struct Violation {
    std::size_t index = 0;  // record index, or size() for dataset-level rules
    std::string rule;
};

inline std::vector<Violation> validate_dataset(const TrainDataset& ds) {
    std::vector<Violation> out;
    std::size_t arm_count[2] = {0, 0};
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& r = ds.records[i];
        if (r.a != 0 && r.a != 1) {
            out.push_back({i, "treatment arm not binary"});
        } else {
            ++arm_count[r.a];
        }
        if (r.x.size() != ds.d_x) out.push_back({i, "covariate dimension mismatch"});
        for (double v : r.x) {
            if (!std::isfinite(v)) {
                out.push_back({i, "non-finite x at index " + std::to_string(i)});
                break;
            }
        }
        if (!std::isfinite(r.y)) out.push_back({i, "non-finite y"});
        if (r.tau_true && !std::isfinite(*r.tau_true)) out.push_back({i, "non-finite tau_true"});
    }
    if (arm_count[0] == 0) out.push_back({ds.records.size(), "arm 0 absent"});
    if (arm_count[1] == 0) out.push_back({ds.records.size(), "arm 1 absent"});
    return out;
}

inline std::vector<Violation> validate_dataset(const TestDataset& ds) {
    std::vector<Violation> out;
    std::size_t arm_count[2] = {0, 0};
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& r = ds.records[i];
        if (r.a != 0 && r.a != 1) {
            out.push_back({i, "treatment arm not binary"});
        } else {
            ++arm_count[r.a];
        }
        if (r.t.text.empty()) out.push_back({i, "empty surrogate text"});
        if (!std::isfinite(r.y)) out.push_back({i, "non-finite y"});
    }
    if (arm_count[0] == 0) out.push_back({ds.records.size(), "arm 0 absent"});
    if (arm_count[1] == 0) out.push_back({ds.records.size(), "arm 1 absent"});
    return out;
}

}  // namespace tca
