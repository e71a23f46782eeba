#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/core.hpp"
#include "tca/world.hpp"

namespace tca {

// Root mean squared error between estimated and true effects.
inline double pehe(std::span<const double> pred, std::span<const double> truth) {
    if (pred.size() != truth.size()) {
        throw std::invalid_argument("pehe: length mismatch (" + std::to_string(pred.size()) +
                                    " vs " + std::to_string(truth.size()) + ")");
    }
    if (pred.empty()) throw std::invalid_argument("pehe: empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(pred.size()));
}

struct BiasRow {
    std::size_t t = 0;
    double naive_tau = 0.0;
    double true_tau_t = 0.0;
    double bias_observed = 0.0;       // naive_tau - true_tau_t
    double bias_formula_term1 = 0.0;  // E[mu1(X)|A=1,T=t] - E[mu1(X)|T=t]
    double bias_formula_term0 = 0.0;  // E[mu0(X)|A=0,T=t] - E[mu0(X)|T=t]
};

inline constexpr double kEnumTol = 1e-12;

// Both sides of the naive-baseline bias identity, enumerated exactly.
// Throws if the decomposition fails to match the observed bias.
inline BiasRow lemma1_bias(const DiscreteWorld& w, std::size_t t) {
    BiasRow row;
    row.t = t;
    row.naive_tau = w.tau_naive(t);
    row.true_tau_t = w.tau_t_potential(t);
    row.bias_observed = row.naive_tau - row.true_tau_t;
    row.bias_formula_term1 = w.mean_mu_given_at(1, 1, t) - w.mean_mu_given_t(1, t);
    row.bias_formula_term0 = w.mean_mu_given_at(0, 0, t) - w.mean_mu_given_t(0, t);
    const double formula = row.bias_formula_term1 - row.bias_formula_term0;
    if (std::abs(row.bias_observed - formula) > kEnumTol) {
        throw std::logic_error("lemma1_bias: identity violated by " +
                               std::to_string(std::abs(row.bias_observed - formula)));
    }
    return row;
}

// E[tau_x(X) | T=t]; throws unless it matches the enumerated E[Y(1)-Y(0)|T=t].
inline double lemma2_oracle(const DiscreteWorld& w, std::size_t t) {
    const double via_x = w.tau_t(t);
    const double direct = w.tau_t_potential(t);
    if (std::abs(via_x - direct) > kEnumTol) {
        throw std::logic_error("lemma2_oracle: identity violated by " +
                               std::to_string(std::abs(via_x - direct)));
    }
    return via_x;
}

struct SubgroupTable {
    std::map<std::string, double> pehe_by_tag;
    std::vector<std::string> warnings;
};

inline SubgroupTable subgroup_table(std::span<const double> pred,
                                    std::span<const double> truth,
                                    std::span<const std::optional<GroupTags>> tags,
                                    const std::string& tag_key) {
    if (pred.size() != truth.size() || pred.size() != tags.size()) {
        throw std::invalid_argument("subgroup_table: length mismatch");
    }
    std::map<std::string, std::pair<double, std::size_t>> acc;
    std::size_t missing = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!tags[i]) {
            ++missing;
            continue;
        }
        const auto it = tags[i]->find(tag_key);
        if (it == tags[i]->end()) {
            ++missing;
            continue;
        }
        const double d = pred[i] - truth[i];
        auto& slot = acc[it->second];
        slot.first += d * d;
        slot.second += 1;
    }
    SubgroupTable out;
    if (missing == pred.size()) {
        out.warnings.push_back("tag key '" + tag_key + "' absent from all records");
        return out;
    }
    if (missing > 0) {
        out.warnings.push_back(std::to_string(missing) + " records lack tag key '" +
                               tag_key + "'");
    }
    for (const auto& [tag, sums] : acc) {
        if (sums.second == 0) continue;
        out.pehe_by_tag[tag] = std::sqrt(sums.first / static_cast<double>(sums.second));
    }
    return out;
}

}  // namespace tca
