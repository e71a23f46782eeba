#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tca/core.hpp"
#include "tca/encoder.hpp"
#include "tca/eval.hpp"
#include "tca/nuisance.hpp"
#include "tca/pseudo.hpp"
#include "tca/surrogate.hpp"

namespace tca {

struct HeadConfig {
    OutcomeModelKind kind = OutcomeModelKind::Ridge;
    double lambda = 1e-2;
    MlpHyper mlp;
};

struct TcaConfig {
    NuisanceConfig nuisance;
    SurrogateConfig surrogate;
    EncoderConfig encoder;
    HeadConfig head;
    std::uint64_t seed = 0;  // drives the surrogate mask stream
};

// Render Stage-2 surrogates in place for records that lack one. Streams are
// derived from (seed, record index) so staged and monolithic runs agree.
inline void render_train_surrogates(TrainDataset& ds, const SurrogateConfig& cfg,
                                    std::uint64_t seed) {
    const CounterRng mask_stream(seed, "train-surrogate-mask");
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        auto& r = ds.records[i];
        if (!r.surrogate) r.surrogate = render(r.x, cfg, mask_stream.fork(i));
    }
}

inline Matrix embed_texts(const std::vector<std::string>& texts, const EncoderConfig& enc) {
    Matrix E(texts.size(), enc.d_emb);
    for (std::size_t i = 0; i < texts.size(); ++i) {
        const Embedding e = encode(texts[i], enc);
        for (std::size_t j = 0; j < enc.d_emb; ++j) E(i, j) = e.values[j];
    }
    return E;
}

inline Matrix embed_train(const TrainDataset& ds, const EncoderConfig& enc) {
    std::vector<std::string> texts;
    texts.reserve(ds.records.size());
    for (const auto& r : ds.records) {
        if (!r.surrogate) {
            throw std::invalid_argument("embed_train: record lacks a surrogate");
        }
        texts.push_back(r.surrogate->text);
    }
    return embed_texts(texts, enc);
}

namespace detail {

inline OutcomeModel fit_head(const Matrix& X, const Vector& y, const HeadConfig& head,
                             std::uint64_t seed) {
    OutcomeModel m;
    m.kind = head.kind;
    if (head.kind == OutcomeModelKind::Ridge) {
        m.ridge = fit_ridge(X, y, head.lambda);
    } else {
        MlpHyper h = head.mlp;
        h.seed = seed;
        m.mlp = MlpRegressor::fit(X, y, h);
    }
    return m;
}

}  // namespace detail

struct TcaModel {
    EncoderConfig encoder;
    OutcomeModel head;
    double lambda = 1e-2;
};

struct PredictOutcome {
    double value = 0.0;
    bool empty_text = false;
};

// Stage 3 given precomputed embeddings and pseudo-outcomes.
inline TcaModel tca_fit_head(const Matrix& emb, const Vector& pseudo,
                             const EncoderConfig& enc, const HeadConfig& head,
                             std::uint64_t seed = 0) {
    TcaModel m;
    m.encoder = enc;
    m.lambda = head.lambda;
    m.head = detail::fit_head(emb, pseudo, head, CounterRng::mix(seed ^ 0x7ca));
    return m;
}

// Full three-stage fit: nuisances and pseudo-outcomes on the covariates,
// surrogate generation, then the text-conditioned regression.
inline TcaModel tca_fit(TrainDataset& ds, const TcaConfig& cfg) {
    const auto violations = validate_dataset(ds);
    if (!violations.empty()) {
        throw std::invalid_argument("tca_fit: invalid dataset: " + violations.front().rule);
    }
    Vector pseudo;
    try {
        NuisanceConfig ncfg = cfg.nuisance;
        ncfg.seed = cfg.seed;
        const NuisanceBundle bundle = fit_bundle(ds, ncfg);
        Vector y(ds.records.size()), a(ds.records.size());
        for (std::size_t i = 0; i < ds.records.size(); ++i) {
            y(i) = ds.records[i].y;
            a(i) = ds.records[i].a;
        }
        const auto ps = build_pseudo_outcomes(y, a, bundle.preds, PseudoKind::DR);
        pseudo.resize(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) pseudo(i) = ps[i].value;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("tca_fit stage 1: ") + e.what());
    }
    Matrix emb;
    try {
        render_train_surrogates(ds, cfg.surrogate, cfg.seed);
        emb = embed_train(ds, cfg.encoder);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("tca_fit stage 2: ") + e.what());
    }
    try {
        return tca_fit_head(emb, pseudo, cfg.encoder, cfg.head, cfg.seed);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("tca_fit stage 3: ") + e.what());
    }
}

inline PredictOutcome tca_predict_ex(const TcaModel& m, const std::string& text) {
    const Embedding e = encode(text, m.encoder);
    Vector v(m.encoder.d_emb);
    for (std::size_t j = 0; j < m.encoder.d_emb; ++j) v(j) = e.values[j];
    return {m.head.predict(v), e.empty_input};
}

inline double tca_predict(const TcaModel& m, const std::string& text) {
    return tca_predict_ex(m, text).value;
}

// ---------------------------------------------------------------------------
// Naive text-based estimators.
// ---------------------------------------------------------------------------

enum class TbeVariant { S, T };

inline const char* to_string(TbeVariant v) { return v == TbeVariant::S ? "TBE-S" : "TBE-T"; }

struct TbeModel {
    EncoderConfig encoder;
    TbeVariant variant = TbeVariant::T;
    OutcomeModel arm0, arm1;  // T-variant
    OutcomeModel pooled;      // S-variant over [embedding, arm]
};

inline TbeModel tbe_fit_embedded(const Matrix& emb, const Vector& a, const Vector& y,
                                 TbeVariant variant, const EncoderConfig& enc,
                                 const HeadConfig& head, std::uint64_t seed = 0) {
    const Eigen::Index n1 = static_cast<Eigen::Index>(a.sum());
    if (n1 == 0 || n1 == a.size()) {
        throw std::invalid_argument("tbe_fit: an arm is empty");
    }
    TbeModel m;
    m.encoder = enc;
    m.variant = variant;
    if (variant == TbeVariant::T) {
        std::vector<Eigen::Index> i0, i1;
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            (static_cast<int>(a(i)) == 0 ? i0 : i1).push_back(i);
        }
        auto slice = [&](const std::vector<Eigen::Index>& rows) {
            Matrix X(rows.size(), emb.cols());
            Vector yy(rows.size());
            for (std::size_t j = 0; j < rows.size(); ++j) {
                X.row(j) = emb.row(rows[j]);
                yy(j) = y(rows[j]);
            }
            return std::make_pair(std::move(X), std::move(yy));
        };
        auto [X0, y0] = slice(i0);
        auto [X1, y1] = slice(i1);
        m.arm0 = detail::fit_head(X0, y0, head, CounterRng::mix(seed ^ 0xb0));
        m.arm1 = detail::fit_head(X1, y1, head, CounterRng::mix(seed ^ 0xb1));
    } else {
        Matrix Z(emb.rows(), emb.cols() + 1);
        Z.leftCols(emb.cols()) = emb;
        Z.col(emb.cols()) = a;
        m.pooled = detail::fit_head(Z, y, head, CounterRng::mix(seed ^ 0xb5));
    }
    return m;
}

// Fits on inference-shaped training data: (text, arm, outcome) triples.
inline TbeModel tbe_fit(const TestDataset& ds, TbeVariant variant, const EncoderConfig& enc,
                        const HeadConfig& head, std::uint64_t seed = 0) {
    std::vector<std::string> texts;
    Vector a(ds.records.size()), y(ds.records.size());
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        texts.push_back(ds.records[i].t.text);
        a(i) = ds.records[i].a;
        y(i) = ds.records[i].y;
    }
    return tbe_fit_embedded(embed_texts(texts, enc), a, y, variant, enc, head, seed);
}

inline PredictOutcome tbe_predict_ex(const TbeModel& m, const std::string& text) {
    const Embedding e = encode(text, m.encoder);
    Vector v(m.encoder.d_emb);
    for (std::size_t j = 0; j < m.encoder.d_emb; ++j) v(j) = e.values[j];
    if (m.variant == TbeVariant::T) {
        return {m.arm1.predict(v) - m.arm0.predict(v), e.empty_input};
    }
    Vector z1(v.size() + 1), z0(v.size() + 1);
    z1 << v, 1.0;
    z0 << v, 0.0;
    return {m.pooled.predict(z1) - m.pooled.predict(z0), e.empty_input};
}

inline double tbe_predict(const TbeModel& m, const std::string& text) {
    return tbe_predict_ex(m, text).value;
}

}  // namespace tca
