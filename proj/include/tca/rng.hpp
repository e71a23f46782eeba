#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace tca {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = kFnvOffset;
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

// SplitMix64 run in counter mode: the i-th output is a pure function of
// (key, i), so streams can be forked and replayed without draw-order
// coupling between purposes.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::string_view purpose)
        : key_(mix(mix(seed) ^ fnv1a64(purpose))), counter_(0) {}

    // Child generator whose outputs are independent of this stream's position.
    [[nodiscard]] CounterRng fork(std::uint64_t id) const {
        CounterRng child = *this;
        child.key_ = mix(key_ ^ mix(id + 0x517cc1b727220a95ull));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log() argument.
    double next_double_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double next_normal() {
        const double u1 = next_double_open();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, n). Modulo bias is irrelevant at the n used here.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[next_below(i)]);
        }
    }

    std::uint64_t key() const { return key_; }

    static std::uint64_t mix(std::uint64_t z) {
        z += kGamma;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace tca
