#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/rng.hpp"

namespace tca {

// Fully enumerable joint P(X, T, A, Y) over small finite supports. The
// generative factorization mirrors the causal graph: X drives T, A and Y;
// T influences nothing downstream. Potential outcomes are well defined
// because P(Y | X, A) is specified directly.
struct WorldSpec {
    std::vector<double> x_probs;                          // |X|
    std::vector<std::vector<double>> t_given_x;           // |X| x |T|
    std::vector<double> a1_given_x;                       // |X|
    std::vector<double> y_values;                         // |Y| support points
    std::vector<std::vector<std::vector<double>>> y_given_xa;  // |X| x 2 x |Y|
};

class DiscreteWorld {
public:
    static constexpr double kRowTol = 1e-12;

    explicit DiscreteWorld(WorldSpec spec) : s_(std::move(spec)) {
        nx_ = s_.x_probs.size();
        nt_ = nx_ ? s_.t_given_x[0].size() : 0;
        ny_ = s_.y_values.size();
        if (nx_ == 0 || nt_ == 0 || ny_ == 0) {
            throw std::invalid_argument("world: empty support");
        }
        if (nx_ > 16 || nt_ > 16) {
            throw std::invalid_argument("world: supports limited to 16 states");
        }
        check_row(s_.x_probs, "P(X)");
        if (s_.t_given_x.size() != nx_ || s_.a1_given_x.size() != nx_ ||
            s_.y_given_xa.size() != nx_) {
            throw std::invalid_argument("world: table shape mismatch");
        }
        for (std::size_t x = 0; x < nx_; ++x) {
            if (s_.t_given_x[x].size() != nt_) {
                throw std::invalid_argument("world: T table shape mismatch");
            }
            check_row(s_.t_given_x[x], "P(T|X=" + std::to_string(x) + ")");
            if (s_.a1_given_x[x] < 0.0 || s_.a1_given_x[x] > 1.0) {
                throw std::invalid_argument("world: P(A=1|X) outside [0,1]");
            }
            if (s_.y_given_xa[x].size() != 2) {
                throw std::invalid_argument("world: Y table needs both arms");
            }
            for (int a = 0; a < 2; ++a) {
                if (s_.y_given_xa[x][a].size() != ny_) {
                    throw std::invalid_argument("world: Y table shape mismatch");
                }
                check_row(s_.y_given_xa[x][a],
                          "P(Y|X=" + std::to_string(x) + ",A=" + std::to_string(a) + ")");
            }
        }
    }

    std::size_t n_x() const { return nx_; }
    std::size_t n_t() const { return nt_; }
    std::size_t n_y() const { return ny_; }
    const WorldSpec& spec() const { return s_; }

    double p_a_given_x(std::size_t x, int a) const {
        return a == 1 ? s_.a1_given_x[x] : 1.0 - s_.a1_given_x[x];
    }

    double joint(std::size_t x, std::size_t t, int a, std::size_t yi) const {
        return s_.x_probs[x] * s_.t_given_x[x][t] * p_a_given_x(x, a) *
               s_.y_given_xa[x][a][yi];
    }

    double p_t(std::size_t t) const {
        double s = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) s += s_.x_probs[x] * s_.t_given_x[x][t];
        return s;
    }

    double p_x_given_t(std::size_t x, std::size_t t) const {
        return s_.x_probs[x] * s_.t_given_x[x][t] / p_t(t);
    }

    double p_at(int a, std::size_t t) const {
        double s = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) {
            s += s_.x_probs[x] * s_.t_given_x[x][t] * p_a_given_x(x, a);
        }
        return s;
    }

    double mu_ax(std::size_t x, int a) const {
        double s = 0.0;
        for (std::size_t yi = 0; yi < ny_; ++yi) {
            s += s_.y_values[yi] * s_.y_given_xa[x][a][yi];
        }
        return s;
    }

    double tau_x(std::size_t x) const { return mu_ax(x, 1) - mu_ax(x, 0); }

    // E[tau_x(X) | T=t]: the identification route through the covariates.
    double tau_t(std::size_t t) const {
        const double pt = p_t(t);
        if (pt <= 0.0) throw std::invalid_argument("tau_t: P(T=t) = 0");
        double s = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) {
            s += tau_x(x) * s_.x_probs[x] * s_.t_given_x[x][t];
        }
        return s / pt;
    }

    // E[Y(1)-Y(0) | T=t] enumerated directly from potential-outcome tables.
    double tau_t_potential(std::size_t t) const {
        const double pt = p_t(t);
        if (pt <= 0.0) throw std::invalid_argument("tau_t_potential: P(T=t) = 0");
        double s = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) {
            const double w = s_.x_probs[x] * s_.t_given_x[x][t];
            s += w * (mu_ax(x, 1) - mu_ax(x, 0));
        }
        return s / pt;
    }

    // E[Y | A=a, T=t] from the observational joint.
    double mean_y_given_at(int a, std::size_t t) const {
        const double pat = p_at(a, t);
        if (pat <= 0.0) {
            throw std::invalid_argument("mean_y_given_at: P(A=" + std::to_string(a) +
                                        ",T=" + std::to_string(t) + ") = 0");
        }
        double s = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) {
            for (std::size_t yi = 0; yi < ny_; ++yi) {
                s += s_.y_values[yi] * joint(x, t, a, yi);
            }
        }
        return s / pat;
    }

    double tau_naive(std::size_t t) const {
        return mean_y_given_at(1, t) - mean_y_given_at(0, t);
    }

    // E[mu_a(X) | A=a, T=t]
    double mean_mu_given_at(int mu_arm, int a, std::size_t t) const {
        const double pat = p_at(a, t);
        if (pat <= 0.0) {
            throw std::invalid_argument("mean_mu_given_at: conditioning event has mass 0");
        }
        double s = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) {
            s += mu_ax(x, mu_arm) * s_.x_probs[x] * s_.t_given_x[x][t] * p_a_given_x(x, a);
        }
        return s / pat;
    }

    // E[mu_a(X) | T=t]
    double mean_mu_given_t(int mu_arm, std::size_t t) const {
        const double pt = p_t(t);
        if (pt <= 0.0) throw std::invalid_argument("mean_mu_given_t: P(T=t) = 0");
        double s = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) {
            s += mu_ax(x, mu_arm) * s_.x_probs[x] * s_.t_given_x[x][t];
        }
        return s / pt;
    }

    double entropy_x() const {
        double h = 0.0;
        for (double p : s_.x_probs) {
            if (p > 0) h -= p * std::log2(p);
        }
        return h;
    }

    double mutual_information_xt() const {
        double mi = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) {
            for (std::size_t t = 0; t < nt_; ++t) {
                const double pxt = s_.x_probs[x] * s_.t_given_x[x][t];
                if (pxt > 0) mi += pxt * std::log2(pxt / (s_.x_probs[x] * p_t(t)));
            }
        }
        return mi;
    }

private:
    static void check_row(const std::vector<double>& row, const std::string& name) {
        double sum = 0.0;
        for (double p : row) {
            if (p < 0.0) throw std::invalid_argument("world: negative probability in " + name);
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowTol) {
            throw std::invalid_argument("world: " + name + " is not row-stochastic");
        }
    }

    WorldSpec s_;
    std::size_t nx_ = 0, nt_ = 0, ny_ = 0;
};

// Random world with strictly positive cells everywhere, for property sweeps.
inline DiscreteWorld random_world(CounterRng& rng, std::size_t nx, std::size_t nt,
                                  std::size_t ny) {
    auto positive_row = [&](std::size_t n) {
        std::vector<double> row(n);
        double sum = 0.0;
        for (auto& p : row) {
            p = 0.1 + 0.9 * rng.next_double();
            sum += p;
        }
        for (auto& p : row) p /= sum;
        return row;
    };
    WorldSpec s;
    s.x_probs = positive_row(nx);
    for (std::size_t x = 0; x < nx; ++x) s.t_given_x.push_back(positive_row(nt));
    for (std::size_t x = 0; x < nx; ++x) {
        s.a1_given_x.push_back(0.05 + 0.9 * rng.next_double());
    }
    s.y_values.resize(ny);
    for (auto& v : s.y_values) v = -1.0 + 2.0 * rng.next_double();
    s.y_given_xa.resize(nx);
    for (std::size_t x = 0; x < nx; ++x) {
        s.y_given_xa[x].push_back(positive_row(ny));
        s.y_given_xa[x].push_back(positive_row(ny));
    }
    return DiscreteWorld(std::move(s));
}

struct WorldSample {
    std::size_t x = 0;
    std::size_t t = 0;
    int a = 0;
    double y = 0.0;
};

inline WorldSample sample_world(const DiscreteWorld& w, CounterRng& rng) {
    auto pick = [&](const std::vector<double>& probs) {
        const double u = rng.next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return i;
        }
        return probs.size() - 1;
    };
    WorldSample smp;
    smp.x = pick(w.spec().x_probs);
    smp.t = pick(w.spec().t_given_x[smp.x]);
    smp.a = rng.next_bernoulli(w.spec().a1_given_x[smp.x]) ? 1 : 0;
    smp.y = w.spec().y_values[pick(w.spec().y_given_xa[smp.x][smp.a])];
    return smp;
}

}  // namespace tca
