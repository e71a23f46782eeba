#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/core.hpp"
#include "tca/dgp.hpp"
#include "tca/models.hpp"
#include "tca/rng.hpp"

namespace tca {

enum class OutcomeModelKind { Ridge, Mlp };

struct NuisanceConfig {
    OutcomeModelKind kind = OutcomeModelKind::Ridge;
    double lambda = 1e-2;
    double clip = 0.01;
    int k_folds = 2;
    MlpHyper mlp;
    std::uint64_t seed = 0;
};

struct OutcomeModel {
    OutcomeModelKind kind = OutcomeModelKind::Ridge;
    RidgeModel ridge;
    std::optional<MlpRegressor> mlp;

    double predict(const Eigen::Ref<const Vector>& x) const {
        return kind == OutcomeModelKind::Ridge ? ridge.predict(x) : mlp->predict(x);
    }
};

// Out-of-fold nuisance values for every training record.
struct NuisancePredictions {
    Vector mu0, mu1, pi;
};

struct NuisanceBundle {
    struct FoldModels {
        OutcomeModel mu0, mu1;
        LogisticModel pi;
    };

    NuisanceConfig cfg;
    std::vector<int> fold_map;  // fold owning each training record
    std::vector<FoldModels> folds;
    NuisancePredictions preds;
};

namespace detail {

inline OutcomeModel fit_outcome(const Matrix& X, const Vector& y,
                                const NuisanceConfig& cfg, std::uint64_t mlp_seed) {
    OutcomeModel m;
    m.kind = cfg.kind;
    if (cfg.kind == OutcomeModelKind::Ridge) {
        m.ridge = fit_ridge(X, y, cfg.lambda);
    } else {
        MlpHyper h = cfg.mlp;
        h.seed = mlp_seed;
        m.mlp = MlpRegressor::fit(X, y, h);
    }
    return m;
}

}  // namespace detail

// Stage-1 fit: outcome heads per arm plus the propensity model, cross-fit
// over stratified folds so no record is predicted by a model that saw it.
inline NuisanceBundle fit_bundle(const Matrix& X, const Vector& a, const Vector& y,
                                 const NuisanceConfig& cfg) {
    const Eigen::Index n = X.rows();
    if (cfg.k_folds < 1) throw std::invalid_argument("fit_bundle: k_folds must be >= 1");

    NuisanceBundle b;
    b.cfg = cfg;
    b.fold_map.assign(n, 0);

    if (cfg.k_folds > 1) {
        // Stratify by arm so every fold complement keeps both arms.
        CounterRng rng(cfg.seed, "nuisance-folds");
        for (int arm = 0; arm < 2; ++arm) {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (static_cast<int>(a(i)) == arm) idx.push_back(i);
            }
            if (static_cast<int>(idx.size()) < 2 * cfg.k_folds) {
                throw std::invalid_argument("fit_bundle: arm " + std::to_string(arm) +
                                            " too small for " +
                                            std::to_string(cfg.k_folds) + "-fold fitting");
            }
            rng.shuffle(idx);
            for (std::size_t j = 0; j < idx.size(); ++j) {
                b.fold_map[idx[j]] = static_cast<int>(j % cfg.k_folds);
            }
        }
    } else {
        if (a.sum() <= 0.0 || a.sum() >= static_cast<double>(n)) {
            throw std::invalid_argument("fit_bundle: both arms must be present");
        }
    }

    b.preds.mu0.resize(n);
    b.preds.mu1.resize(n);
    b.preds.pi.resize(n);

    const int k = cfg.k_folds;
    for (int f = 0; f < k; ++f) {
        std::vector<Eigen::Index> train0, train1, train_all, held;
        for (Eigen::Index i = 0; i < n; ++i) {
            const bool in_fold = (k > 1) && (b.fold_map[i] == f);
            if (in_fold) {
                held.push_back(i);
            } else {
                train_all.push_back(i);
                (static_cast<int>(a(i)) == 0 ? train0 : train1).push_back(i);
            }
        }
        if (k == 1) {
            held = train_all;  // in-sample predictions by construction
            for (Eigen::Index i = 0; i < n; ++i) {
                (static_cast<int>(a(i)) == 0 ? train0 : train1).push_back(i);
            }
        }
        auto take = [&](const std::vector<Eigen::Index>& rows, const Vector& src) {
            Vector out(rows.size());
            for (std::size_t j = 0; j < rows.size(); ++j) out(j) = src(rows[j]);
            return out;
        };
        auto take_x = [&](const std::vector<Eigen::Index>& rows) {
            Matrix out(rows.size(), X.cols());
            for (std::size_t j = 0; j < rows.size(); ++j) out.row(j) = X.row(rows[j]);
            return out;
        };

        NuisanceBundle::FoldModels fm;
        fm.mu0 = detail::fit_outcome(take_x(train0), take(train0, y), cfg,
                                     CounterRng::mix(cfg.seed ^ (2 * f)));
        fm.mu1 = detail::fit_outcome(take_x(train1), take(train1, y), cfg,
                                     CounterRng::mix(cfg.seed ^ (2 * f + 1)));
        const Matrix Xall = take_x(k == 1 ? held : train_all);
        fm.pi = fit_logistic(Xall, take(k == 1 ? held : train_all, a), 100, 1e-9, cfg.clip);

        for (Eigen::Index i : held) {
            const Vector xi = X.row(i).transpose();
            b.preds.mu0(i) = fm.mu0.predict(xi);
            b.preds.mu1(i) = fm.mu1.predict(xi);
            b.preds.pi(i) = fm.pi.predict(xi);
        }
        b.folds.push_back(std::move(fm));
    }
    return b;
}

inline Matrix covariate_matrix(const TrainDataset& ds) {
    Matrix X(ds.records.size(), ds.d_x);
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        for (std::size_t j = 0; j < ds.d_x; ++j) X(i, j) = ds.records[i].x[j];
    }
    return X;
}

inline NuisanceBundle fit_bundle(const TrainDataset& ds, const NuisanceConfig& cfg) {
    const Eigen::Index n = ds.records.size();
    Vector a(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i) = ds.records[i].a;
        y(i) = ds.records[i].y;
    }
    return fit_bundle(covariate_matrix(ds), a, y, cfg);
}

// Nuisance values from the generating process itself (clipped propensity),
// for oracle-injection checks.
inline NuisancePredictions oracle_predictions(const TrainDataset& ds, const DgpParams& p,
                                              double clip = 0.01) {
    const std::size_t n = ds.records.size();
    NuisancePredictions out;
    out.mu0.resize(n);
    out.mu1.resize(n);
    out.pi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = ds.records[i].x;
        out.mu0(i) = mu0_true(x, p);
        out.mu1(i) = mu1_true(x, p);
        const double pi = propensity_true(x, p);
        out.pi(i) = pi < clip ? clip : (pi > 1.0 - clip ? 1.0 - clip : pi);
    }
    return out;
}

}  // namespace tca
