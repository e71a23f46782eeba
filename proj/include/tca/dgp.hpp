#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/core.hpp"
#include "tca/rng.hpp"

namespace tca {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct DgpParams {
    int d_x = 15;
    std::vector<double> beta;   // baseline risk direction
    std::vector<double> delta;  // effect-modifier direction
    std::vector<double> xi;     // treatment-assignment direction
    double gamma1 = 1.0;
    double gamma2 = 0.5;
    double gamma3 = 0.5;
    double eta = 1.0;    // outcome-confounding strength (interaction term)
    double kappa = 1.0;  // treatment-confounding strength
    double noise_sd = 0.1;
    std::size_t n = 10000;
    std::uint64_t seed = 1;

    void validate() const {
        if (beta.size() != static_cast<std::size_t>(d_x) ||
            delta.size() != static_cast<std::size_t>(d_x) ||
            xi.size() != static_cast<std::size_t>(d_x)) {
            throw std::invalid_argument("coefficient vector length must equal d_x");
        }
        if (noise_sd < 0 || eta < 0 || kappa < 0) {
            throw std::invalid_argument("noise_sd, eta and kappa must be nonnegative");
        }
    }
};

namespace detail {

inline std::vector<double> unit_sphere_draw(CounterRng& rng, int d) {
    std::vector<double> v(d);
    double norm2 = 0.0;
    for (auto& vi : v) {
        vi = rng.next_normal();
        norm2 += vi * vi;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& vi : v) vi *= inv;
    return v;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

// Frozen benchmark coefficients. Baseline risk (beta), effect modification
// (delta) and treatment assignment (xi) all load on one latent severity
// axis: sicker patients are likelier to be treated, carry higher baseline
// risk, and respond more strongly. Without that shared axis the naive
// text-based estimator is nearly unbiased and the benchmark has no signal.
inline constexpr std::uint64_t kCoefficientSeed = 7;

inline DgpParams default_dgp_params(int d_x = 15) {
    CounterRng rng(kCoefficientSeed, "dgp-coefficients");
    auto severity = detail::unit_sphere_draw(rng, d_x);
    auto u1 = detail::unit_sphere_draw(rng, d_x);
    auto u2 = detail::unit_sphere_draw(rng, d_x);
    const double rho = 0.95;
    const double orth = std::sqrt(1.0 - rho * rho);
    auto mix = [&](const std::vector<double>& u, double scale) {
        std::vector<double> v(d_x);
        double norm2 = 0.0;
        for (int i = 0; i < d_x; ++i) {
            v[i] = rho * severity[i] + orth * u[i];
            norm2 += v[i] * v[i];
        }
        const double inv = scale / std::sqrt(norm2);
        for (auto& vi : v) vi *= inv;
        return v;
    };
    DgpParams p;
    p.d_x = d_x;
    p.beta = mix(u1, 0.5);
    p.delta = mix(u2, 1.0);
    p.xi.resize(d_x);
    for (int i = 0; i < d_x; ++i) p.xi[i] = 4.0 * severity[i];
    return p;
}

inline double propensity_true(const std::vector<double>& x, const DgpParams& p) {
    return sigmoid(p.kappa * detail::dot(p.xi, x));
}

inline int sample_treatment(const std::vector<double>& x, const DgpParams& p, CounterRng& rng) {
    return rng.next_bernoulli(propensity_true(x, p)) ? 1 : 0;
}

inline double outcome_mean(const std::vector<double>& x, int a, const DgpParams& p) {
    const double af = static_cast<double>(a);
    return sigmoid(detail::dot(p.beta, x) + p.gamma1 * af + p.gamma2 * af * af +
                   p.gamma3 * std::sin(af)) +
           p.eta * detail::dot(p.delta, x) * af;
}

inline double sample_outcome(const std::vector<double>& x, int a, const DgpParams& p,
                             CounterRng& rng) {
    return outcome_mean(x, a, p) + p.noise_sd * rng.next_normal();
}

inline double mu0_true(const std::vector<double>& x, const DgpParams& p) {
    return outcome_mean(x, 0, p);
}

inline double mu1_true(const std::vector<double>& x, const DgpParams& p) {
    return outcome_mean(x, 1, p);
}

inline double true_cate(const std::vector<double>& x, const DgpParams& p) {
    return mu1_true(x, p) - mu0_true(x, p);
}

inline TrainDataset generate(const DgpParams& p) {
    p.validate();
    if (p.n == 0) throw std::invalid_argument("generate: n must be >= 1");

    CounterRng x_rng(p.seed, "covariates");
    CounterRng a_rng(p.seed, "treatment");
    CounterRng e_rng(p.seed, "outcome-noise");

    TrainDataset ds;
    ds.d_x = static_cast<std::size_t>(p.d_x);
    ds.meta.seed = p.seed;
    ds.meta.knobs = {{"eta", p.eta}, {"kappa", p.kappa}, {"noise_sd", p.noise_sd}};
    ds.records.reserve(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        TrainRecord r;
        r.x.resize(p.d_x);
        for (auto& v : r.x) v = x_rng.next_normal();
        r.a = sample_treatment(r.x, p, a_rng);
        r.y = outcome_mean(r.x, r.a, p) + p.noise_sd * e_rng.next_normal();
        r.tau_true = true_cate(r.x, p);
        r.groups = GroupTags{{"sex", r.x[0] > 0 ? "M" : "F"},
                             {"age", r.x[1] > 0 ? "O" : "Y"}};
        ds.records.push_back(std::move(r));
    }
    return ds;
}

}  // namespace tca
