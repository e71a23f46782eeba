#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/nuisance.hpp"

namespace tca {

enum class PseudoKind { DR, RA, PW };

struct PseudoComponents {
    double mu1_hat = 0.0;
    double mu0_hat = 0.0;
    double pi_hat = 0.5;
    double residual_term_1 = 0.0;
    double residual_term_0 = 0.0;
};

struct PseudoOutcome {
    double value = 0.0;
    PseudoKind kind = PseudoKind::DR;
    PseudoComponents components;
};

namespace detail {

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("pseudo-outcome: non-finite ") + name);
    }
}

inline void require_propensity(double pi) {
    require_finite(pi, "pi_hat");
    if (pi <= 0.0 || pi >= 1.0) {
        throw std::invalid_argument("pseudo-outcome: pi_hat outside (0, 1); clip it first");
    }
}

inline void require_arm(int a) {
    if (a != 0 && a != 1) throw std::invalid_argument("pseudo-outcome: a must be 0 or 1");
}

}  // namespace detail

// Ytilde = mu1 - mu0 + a/pi (y - mu1) - (1-a)/(1-pi) (y - mu0)
inline PseudoOutcome dr_pseudo(double y, int a, double mu1_hat, double mu0_hat,
                               double pi_hat) {
    detail::require_finite(y, "y");
    detail::require_arm(a);
    detail::require_finite(mu1_hat, "mu1_hat");
    detail::require_finite(mu0_hat, "mu0_hat");
    detail::require_propensity(pi_hat);

    PseudoOutcome p;
    p.kind = PseudoKind::DR;
    p.components.mu1_hat = mu1_hat;
    p.components.mu0_hat = mu0_hat;
    p.components.pi_hat = pi_hat;
    p.components.residual_term_1 = (a / pi_hat) * (y - mu1_hat);
    p.components.residual_term_0 = ((1.0 - a) / (1.0 - pi_hat)) * (y - mu0_hat);
    p.value = mu1_hat - mu0_hat + p.components.residual_term_1 - p.components.residual_term_0;
    return p;
}

// Ytilde = a (y - mu0) + (1-a)(mu1 - y)
inline PseudoOutcome ra_pseudo(double y, int a, double mu1_hat, double mu0_hat) {
    detail::require_finite(y, "y");
    detail::require_arm(a);
    detail::require_finite(mu1_hat, "mu1_hat");
    detail::require_finite(mu0_hat, "mu0_hat");

    PseudoOutcome p;
    p.kind = PseudoKind::RA;
    p.components.mu1_hat = mu1_hat;
    p.components.mu0_hat = mu0_hat;
    p.components.residual_term_1 = a * (y - mu0_hat);
    p.components.residual_term_0 = -(1.0 - a) * (mu1_hat - y);
    p.value = p.components.residual_term_1 - p.components.residual_term_0;
    return p;
}

// Ytilde = (a/pi - (1-a)/(1-pi)) y
inline PseudoOutcome pw_pseudo(double y, int a, double pi_hat) {
    detail::require_finite(y, "y");
    detail::require_arm(a);
    detail::require_propensity(pi_hat);

    PseudoOutcome p;
    p.kind = PseudoKind::PW;
    p.components.pi_hat = pi_hat;
    p.components.residual_term_1 = (a / pi_hat) * y;
    p.components.residual_term_0 = ((1.0 - a) / (1.0 - pi_hat)) * y;
    p.value = p.components.residual_term_1 - p.components.residual_term_0;
    return p;
}

inline std::vector<PseudoOutcome> build_pseudo_outcomes(const Vector& y, const Vector& a,
                                                        const NuisancePredictions& nu,
                                                        PseudoKind kind) {
    std::vector<PseudoOutcome> out;
    out.reserve(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const int ai = static_cast<int>(a(i));
        switch (kind) {
            case PseudoKind::DR:
                out.push_back(dr_pseudo(y(i), ai, nu.mu1(i), nu.mu0(i), nu.pi(i)));
                break;
            case PseudoKind::RA:
                out.push_back(ra_pseudo(y(i), ai, nu.mu1(i), nu.mu0(i)));
                break;
            case PseudoKind::PW:
                out.push_back(pw_pseudo(y(i), ai, nu.pi(i)));
                break;
        }
    }
    return out;
}

}  // namespace tca
