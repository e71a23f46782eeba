#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tca/learners.hpp"
#include "tca/models.hpp"
#include "tca/version.hpp"

namespace tca {

// Model files carry explicit weight arrays, hyperparameters and a mandatory
// version field.

namespace detail {

inline nlohmann::json vec_to_json(const Vector& v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    return out;
}

inline Vector vec_from_json(const nlohmann::json& j) {
    const auto v = j.get<std::vector<double>>();
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i];
    return out;
}

inline nlohmann::json outcome_to_json(const OutcomeModel& m) {
    nlohmann::json j;
    if (m.kind == OutcomeModelKind::Ridge) {
        j["kind"] = "ridge";
        j["weights"] = vec_to_json(m.ridge.weights);
        j["bias"] = m.ridge.bias;
        j["lambda"] = m.ridge.lambda;
    } else {
        j["kind"] = "mlp";
        const auto& mlp = *m.mlp;
        j["hidden"] = mlp.hyper().hidden;
        j["dropout"] = mlp.hyper().dropout;
        j["learning_rate"] = mlp.hyper().learning_rate;
        j["epochs"] = mlp.hyper().epochs;
        j["batch_size"] = mlp.hyper().batch_size;
        j["seed"] = mlp.hyper().seed;
        j["d_in"] = mlp.layer_dims().front();
        j["parameters"] = vec_to_json(mlp.parameters());
        j["input_mean"] = vec_to_json(mlp.input_mean());
        j["input_scale"] = vec_to_json(mlp.input_scale());
    }
    return j;
}

inline OutcomeModel outcome_from_json(const nlohmann::json& j) {
    OutcomeModel m;
    if (j.at("kind") == "ridge") {
        m.kind = OutcomeModelKind::Ridge;
        m.ridge.weights = vec_from_json(j.at("weights"));
        m.ridge.bias = j.at("bias").get<double>();
        m.ridge.lambda = j.at("lambda").get<double>();
    } else {
        m.kind = OutcomeModelKind::Mlp;
        MlpHyper h;
        h.hidden = j.at("hidden").get<std::vector<int>>();
        h.dropout = j.at("dropout").get<double>();
        h.learning_rate = j.at("learning_rate").get<double>();
        h.epochs = j.at("epochs").get<int>();
        h.batch_size = j.at("batch_size").get<int>();
        h.seed = j.at("seed").get<std::uint64_t>();
        MlpRegressor mlp(j.at("d_in").get<int>(), h);
        mlp.set_parameters(vec_from_json(j.at("parameters")));
        mlp.set_standardization(vec_from_json(j.at("input_mean")),
                                vec_from_json(j.at("input_scale")));
        m.mlp = std::move(mlp);
    }
    return m;
}

inline void require_version(const nlohmann::json& j, const std::string& what) {
    if (!j.contains("version")) {
        throw std::runtime_error(what + ": missing mandatory version field");
    }
}

}  // namespace detail

inline nlohmann::json to_json(const TcaModel& m) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["model"] = "tca";
    j["d_emb"] = m.encoder.d_emb;
    j["lambda"] = m.lambda;
    j["head"] = detail::outcome_to_json(m.head);
    return j;
}

inline TcaModel tca_model_from_json(const nlohmann::json& j) {
    detail::require_version(j, "tca model");
    if (j.at("model") != "tca") throw std::runtime_error("not a tca model file");
    TcaModel m;
    m.encoder.d_emb = j.at("d_emb").get<std::size_t>();
    m.lambda = j.at("lambda").get<double>();
    m.head = detail::outcome_from_json(j.at("head"));
    return m;
}

inline nlohmann::json to_json(const TbeModel& m) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["model"] = m.variant == TbeVariant::S ? "tbe-s" : "tbe-t";
    j["d_emb"] = m.encoder.d_emb;
    if (m.variant == TbeVariant::T) {
        j["arm0"] = detail::outcome_to_json(m.arm0);
        j["arm1"] = detail::outcome_to_json(m.arm1);
    } else {
        j["pooled"] = detail::outcome_to_json(m.pooled);
    }
    return j;
}

inline TbeModel tbe_model_from_json(const nlohmann::json& j) {
    detail::require_version(j, "tbe model");
    TbeModel m;
    m.encoder.d_emb = j.at("d_emb").get<std::size_t>();
    const std::string kind = j.at("model").get<std::string>();
    if (kind == "tbe-t") {
        m.variant = TbeVariant::T;
        m.arm0 = detail::outcome_from_json(j.at("arm0"));
        m.arm1 = detail::outcome_from_json(j.at("arm1"));
    } else if (kind == "tbe-s") {
        m.variant = TbeVariant::S;
        m.pooled = detail::outcome_from_json(j.at("pooled"));
    } else {
        throw std::runtime_error("not a tbe model file: " + kind);
    }
    return m;
}

inline void save_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return nlohmann::json::parse(in);
}

}  // namespace tca
