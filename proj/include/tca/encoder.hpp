#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tca/rng.hpp"

namespace tca {

struct EncoderConfig {
    std::size_t d_emb = 512;
};

struct Embedding {
    std::vector<double> values;
    bool empty_input = false;
};

// Lowercase ASCII alnum runs; every other byte is a separator.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c + 32);
        const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        if (alnum) {
            cur.push_back(static_cast<char>(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

// Signed feature hashing over unigrams and bigrams, mean-pooled by the
// unigram token count. Bigrams are joined with 0x1f so "ab"+"c" and
// "a"+"bc" hash differently.
inline Embedding encode(std::string_view text, const EncoderConfig& cfg) {
    Embedding emb;
    emb.values.assign(cfg.d_emb, 0.0);
    const auto toks = tokenize(text);
    if (toks.empty()) {
        emb.empty_input = true;
        return emb;
    }
    auto add = [&](std::string_view token) {
        const std::uint64_t h = fnv1a64(token);
        const double sign = (h >> 63) ? -1.0 : 1.0;
        emb.values[h % cfg.d_emb] += sign;
    };
    for (const auto& t : toks) add(t);
    std::string bigram;
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        bigram.assign(toks[i]);
        bigram.push_back('\x1f');
        bigram.append(toks[i + 1]);
        add(bigram);
    }
    const double n = static_cast<double>(toks.size());
    for (double& v : emb.values) v /= n;
    return emb;
}

}  // namespace tca
