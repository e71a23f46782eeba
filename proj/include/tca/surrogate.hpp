#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/core.hpp"
#include "tca/rng.hpp"
#include "tca/templates.hpp"

namespace tca {

struct RemoteEndpoint {
    std::string url;        // taken from environment when empty
    std::string model = "gpt-4o-mini";
    std::string cache_dir = "remote_cache";
    int max_attempts = 3;
};

struct SurrogateConfig {
    PromptFamily family = PromptFamily::SymptomFocused;
    double leak_probability = 0.6;       // per-coordinate verbalization chance
    std::uint64_t paraphrase_seed = 0;   // drives synonym/filler choices only
    std::optional<RemoteEndpoint> remote;
};

namespace detail {

inline int bin3(double z) { return z < -0.5 ? 0 : (z > 0.5 ? 2 : 1); }

inline constexpr int kFactualUnits = 16;  // 17 ordered levels per coordinate

inline int factual_level(double z) {
    const double q = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const int lev = static_cast<int>(q * (kFactualUnits + 1));
    return lev > kFactualUnits ? kFactualUnits : (lev < 0 ? 0 : lev);
}

inline std::size_t word_count(const std::string& s) {
    std::size_t n = 0;
    bool in = false;
    for (char c : s) {
        const bool sp = (c == ' ');
        if (!sp && !in) ++n;
        in = !sp;
    }
    return n;
}

}  // namespace detail

// g: X -> T. Each coordinate is verbalized independently with probability
// leak_probability; the Assumption-2 noise is realized as (mask draw,
// synonym choice) and never sees treatment or outcome. The mask depends
// only on mask_rng, the surface wording only on (paraphrase_seed, record
// stream identity), so re-rendering with a new paraphrase_seed rewords the
// text without changing what leaked.
inline TextSurrogate render(const std::vector<double>& x, const SurrogateConfig& cfg,
                            CounterRng mask_rng) {
    if (cfg.leak_probability <= 0.0 || cfg.leak_probability > 1.0) {
        throw std::invalid_argument("leak_probability must be in (0, 1]");
    }
    const std::size_t d = x.size();
    std::vector<bool> mask(d);
    bool any = false;
    for (std::size_t i = 0; i < d; ++i) {
        mask[i] = mask_rng.next_bernoulli(cfg.leak_probability);
        any = any || mask[i];
    }
    if (!any) {
        // Keep the surrogate informative: reveal the most extreme coordinate.
        std::size_t arg = 0;
        for (std::size_t i = 1; i < d; ++i) {
            if (std::abs(x[i]) > std::abs(x[arg])) arg = i;
        }
        mask[arg] = true;
    }

    CounterRng syn(cfg.paraphrase_seed ^ mask_rng.key(), "surrogate-synonyms");

    std::string text;
    auto append = [&text](std::string_view s) {
        if (!text.empty()) text.push_back(' ');
        text.append(s);
    };

    switch (cfg.family) {
        case PromptFamily::Factual: {
            append(bank::kFactualIntros[syn.next_below(2)]);
            for (std::size_t i = 0; i < d; ++i) {
                if (!mask[i]) continue;
                const auto key = bank::kRoleKeys[i % bank::kRoleKeys.size()];
                const int k = detail::factual_level(x[i]);
                std::string phrase;
                for (int u = 0; u < detail::kFactualUnits; ++u) {
                    if (u > 0) phrase.push_back(' ');
                    phrase.append(key);
                    phrase.append(u < k ? " raised" : " lowered");
                }
                phrase.push_back('.');
                append(phrase);
            }
            break;
        }
        case PromptFamily::Narrative: {
            append(bank::kNarrativeIntros[syn.next_below(2)]);
            for (std::size_t i = 0; i < d; ++i) {
                if (!mask[i]) continue;
                const auto role = bank::kRoles[i % bank::kRoles.size()];
                const auto skel =
                    bank::kNarrativeSkeletons[detail::bin3(x[i])][syn.next_below(2)];
                std::string phrase(skel);
                const auto pos = phrase.find("{}");
                phrase.replace(pos, 2, role);
                phrase.push_back('.');
                append(phrase);
            }
            // Pad with neutral sentences toward the 150-200 token target.
            std::vector<std::size_t> order(bank::kFillers.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            syn.shuffle(order);
            std::size_t words = detail::word_count(text);
            for (std::size_t j = 0; j < order.size() && words < 150; ++j) {
                std::string filler(bank::kFillers[order[j]]);
                filler.push_back('.');
                append(filler);
                words = detail::word_count(text);
            }
            break;
        }
        case PromptFamily::SymptomFocused: {
            append(bank::kSymptomIntros[syn.next_below(2)]);
            for (std::size_t i = 0; i < d; ++i) {
                if (!mask[i]) continue;
                const auto& per_role = bank::kSymptomPhrases[i % bank::kSymptomPhrases.size()];
                std::string phrase(per_role[detail::bin3(x[i])][syn.next_below(2)]);
                phrase.push_back('.');
                append(phrase);
            }
            break;
        }
    }

    return TextSurrogate{std::move(text), std::move(mask), cfg.family};
}

// The chat prompt a remote generator would receive for this covariate vector.
inline std::string remote_prompt(const std::vector<double>& x, const SurrogateConfig& cfg) {
    std::string values;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) values += ", ";
        values += std::string(bank::kRoles[i % bank::kRoles.size()]);
        values += " ";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", x[i]);
        values += buf;
    }
    switch (cfg.family) {
        case PromptFamily::Factual:
            return "Rewrite the following standardized patient measurements as one plain "
                   "paragraph, keeping every value: " + values;
        case PromptFamily::Narrative:
            return "Write a detailed clinical narrative of roughly 150 to 200 words for a "
                   "patient with these standardized measurements: " + values;
        case PromptFamily::SymptomFocused:
            return "A patient has these standardized measurements but no access to "
                   "diagnostic equipment: " + values +
                   ". How would this patient describe their symptoms in a short text message?";
    }
    return values;
}

}  // namespace tca
