#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tca/rng.hpp"

namespace tca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Vector sigmoid_vec(const Vector& z) {
    return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

// ---------------------------------------------------------------------------
// Ridge regression, closed form, bias unpenalized.
// ---------------------------------------------------------------------------

struct RidgeModel {
    Vector weights;
    double bias = 0.0;
    double lambda = 0.0;

    double predict(const Eigen::Ref<const Vector>& x) const {
        return weights.dot(x) + bias;
    }
    Vector predict_many(const Eigen::Ref<const Matrix>& X) const {
        return (X * weights).array() + bias;
    }
};

inline RidgeModel fit_ridge(const Eigen::Ref<const Matrix>& X,
                            const Eigen::Ref<const Vector>& y, double lambda) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (n < d + 1 && lambda == 0.0) {
        throw std::invalid_argument("fit_ridge: underdetermined system, use lambda > 0");
    }
    if (lambda < 0.0) throw std::invalid_argument("fit_ridge: lambda must be >= 0");

    Matrix Z(n, d + 1);
    Z.leftCols(d) = X;
    Z.col(d).setOnes();
    Matrix G = Z.transpose() * Z;
    for (Eigen::Index j = 0; j < d; ++j) G(j, j) += lambda;
    const Vector rhs = Z.transpose() * y;
    Eigen::LDLT<Matrix> solver(G);
    const Vector theta = solver.solve(rhs);
    const double rel = (G * theta - rhs).norm() / (rhs.norm() + 1e-300);
    if (!theta.allFinite() || rel > 1e-6) {
        throw std::runtime_error(
            "fit_ridge: singular normal equations (collinear features); use lambda > 0");
    }
    RidgeModel m;
    m.weights = theta.head(d);
    m.bias = theta(d);
    m.lambda = lambda;
    return m;
}

// ---------------------------------------------------------------------------
// Logistic regression via iteratively reweighted least squares.
// ---------------------------------------------------------------------------

struct LogisticModel {
    Vector weights;
    double bias = 0.0;
    double clip = 0.01;
    bool separated = false;  // fit was ridge-stabilized after divergence

    double raw(const Eigen::Ref<const Vector>& x) const {
        return 1.0 / (1.0 + std::exp(-(weights.dot(x) + bias)));
    }
    double predict(const Eigen::Ref<const Vector>& x) const {
        const double p = raw(x);
        return p < clip ? clip : (p > 1.0 - clip ? 1.0 - clip : p);
    }
    Vector predict_many(const Eigen::Ref<const Matrix>& X) const {
        Vector p = sigmoid_vec(((X * weights).array() + bias).matrix());
        return p.unaryExpr([this](double v) {
            return v < clip ? clip : (v > 1.0 - clip ? 1.0 - clip : v);
        });
    }
};

inline LogisticModel fit_logistic(const Eigen::Ref<const Matrix>& X,
                                  const Eigen::Ref<const Vector>& a, int max_iter = 100,
                                  double tol = 1e-9, double clip = 0.01) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    const double n1 = a.sum();
    if (n1 <= 0.0 || n1 >= static_cast<double>(n)) {
        throw std::invalid_argument("fit_logistic: both arms must be present");
    }
    if (clip <= 0.0 || clip >= 0.5) {
        throw std::invalid_argument("fit_logistic: clip must be in (0, 0.5)");
    }

    Matrix Z(n, d + 1);
    Z.leftCols(d) = X;
    Z.col(d).setOnes();

    auto irls = [&](double stabilizer, Vector& theta) {
        theta.setZero(d + 1);
        for (int it = 0; it < max_iter; ++it) {
            const Vector p = sigmoid_vec(Z * theta);
            const Vector w = p.array() * (1.0 - p.array());
            Matrix H = Z.transpose() * w.asDiagonal() * Z;
            H.diagonal().array() += stabilizer + 1e-12;
            Vector g = Z.transpose() * (a - p);
            if (stabilizer > 0.0) g -= stabilizer * theta;
            const Vector step = H.ldlt().solve(g);
            theta += step;
            if (!theta.allFinite() || theta.norm() > 1e4) return false;
            if (step.lpNorm<Eigen::Infinity>() < tol) break;
        }
        return theta.allFinite();
    };

    LogisticModel m;
    m.clip = clip;
    Vector theta;
    if (!irls(0.0, theta)) {
        // Divergence indicates (near-)perfect separation.
        if (!irls(1e-3, theta)) {
            throw std::runtime_error("fit_logistic: stabilized fit failed");
        }
        m.separated = true;
    }
    m.weights = theta.head(d);
    m.bias = theta(d);
    return m;
}

// ---------------------------------------------------------------------------
// Multilayer perceptron regressor: rectifier units, inverted dropout,
// adaptive-moment minibatch descent, deterministic given the seed.
// ---------------------------------------------------------------------------

struct MlpHyper {
    std::vector<int> hidden = {64, 64, 64};
    double dropout = 0.3;
    double learning_rate = 5e-5;
    int epochs = 100;
    int batch_size = 512;
    std::uint64_t seed = 0;
};

class MlpRegressor {
public:
    MlpRegressor() = default;

    static MlpRegressor fit(const Eigen::Ref<const Matrix>& X,
                            const Eigen::Ref<const Vector>& y, const MlpHyper& hyper) {
        if (X.rows() < hyper.batch_size) {
            throw std::invalid_argument("MlpRegressor::fit: need at least batch_size rows");
        }
        double lr = hyper.learning_rate;
        for (int attempt = 0; attempt < 3; ++attempt) {
            MlpRegressor m(static_cast<int>(X.cols()), hyper);
            m.standardize_from(X);
            if (m.train(X, y, lr)) return m;
            lr *= 0.5;  // non-finite loss: retry smaller steps
        }
        throw std::runtime_error("MlpRegressor::fit: loss diverged after retries");
    }

    MlpRegressor(int d_in, const MlpHyper& hyper) : hyper_(hyper) {
        dims_.push_back(d_in);
        for (int h : hyper.hidden) dims_.push_back(h);
        dims_.push_back(1);
        CounterRng rng(hyper.seed, "mlp-init");
        for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
            Matrix W(dims_[l + 1], dims_[l]);
            const double scale = std::sqrt(2.0 / dims_[l]);
            for (Eigen::Index i = 0; i < W.rows(); ++i) {
                for (Eigen::Index j = 0; j < W.cols(); ++j) {
                    W(i, j) = scale * rng.next_normal();
                }
            }
            weights_.push_back(std::move(W));
            biases_.emplace_back(Vector::Zero(dims_[l + 1]));
        }
        mean_ = Vector::Zero(d_in);
        scale_ = Vector::Ones(d_in);
    }

    double predict(const Eigen::Ref<const Vector>& x) const {
        Vector h = (x - mean_).cwiseQuotient(scale_);
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            h = (weights_[l] * h + biases_[l]).eval();
            if (l + 1 < weights_.size()) h = h.cwiseMax(0.0);
        }
        return h(0);
    }

    Vector predict_many(const Eigen::Ref<const Matrix>& X) const {
        Vector out(X.rows());
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            out(i) = predict(Vector(X.row(i).transpose()));
        }
        return out;
    }

    double mse(const Eigen::Ref<const Matrix>& X, const Eigen::Ref<const Vector>& y) const {
        return (predict_many(X) - y).squaredNorm() / static_cast<double>(X.rows());
    }

    // Flat parameter access for finite-difference checks.
    Vector parameters() const {
        std::size_t total = 0;
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            total += weights_[l].size() + biases_[l].size();
        }
        Vector p(total);
        Eigen::Index at = 0;
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            for (Eigen::Index j = 0; j < weights_[l].size(); ++j) p(at++) = weights_[l](j);
            for (Eigen::Index j = 0; j < biases_[l].size(); ++j) p(at++) = biases_[l](j);
        }
        return p;
    }

    void set_parameters(const Eigen::Ref<const Vector>& p) {
        Eigen::Index at = 0;
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            for (Eigen::Index j = 0; j < weights_[l].size(); ++j) weights_[l](j) = p(at++);
            for (Eigen::Index j = 0; j < biases_[l].size(); ++j) biases_[l](j) = p(at++);
        }
    }

    // Mean-squared-error loss and its analytic gradient, dropout disabled.
    double loss_and_gradient(const Eigen::Ref<const Matrix>& X,
                             const Eigen::Ref<const Vector>& y, Vector& grad) const {
        std::vector<Matrix> gw(weights_.size());
        std::vector<Vector> gb(weights_.size());
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            gw[l] = Matrix::Zero(weights_[l].rows(), weights_[l].cols());
            gb[l] = Vector::Zero(biases_[l].size());
        }
        const double loss = backprop(X, y, nullptr, gw, gb);
        grad.resize(parameters().size());
        Eigen::Index at = 0;
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            for (Eigen::Index j = 0; j < gw[l].size(); ++j) grad(at++) = gw[l](j);
            for (Eigen::Index j = 0; j < gb[l].size(); ++j) grad(at++) = gb[l](j);
        }
        return loss;
    }

    const MlpHyper& hyper() const { return hyper_; }
    const std::vector<int>& layer_dims() const { return dims_; }
    const Vector& input_mean() const { return mean_; }
    const Vector& input_scale() const { return scale_; }
    void set_standardization(Vector mean, Vector scale) {
        mean_ = std::move(mean);
        scale_ = std::move(scale);
    }

private:
    void standardize_from(const Eigen::Ref<const Matrix>& X) {
        mean_ = X.colwise().mean();
        Vector var = ((X.rowwise() - mean_.transpose()).array().square().colwise().sum() /
                      static_cast<double>(X.rows()))
                         .matrix();
        scale_ = var.array().sqrt().max(1e-8).matrix();
    }

    // Forward/backward over a batch; dropout masks supplied during training.
    double backprop(const Eigen::Ref<const Matrix>& X, const Eigen::Ref<const Vector>& y,
                    CounterRng* dropout_rng, std::vector<Matrix>& gw,
                    std::vector<Vector>& gb) const {
        const Eigen::Index n = X.rows();
        const std::size_t L = weights_.size();
        std::vector<Matrix> act(L + 1);
        act[0] = (X.rowwise() - mean_.transpose()).array().rowwise() /
                 scale_.transpose().array();
        std::vector<Matrix> masks(L);
        for (std::size_t l = 0; l < L; ++l) {
            Matrix z = act[l] * weights_[l].transpose();
            z.rowwise() += biases_[l].transpose();
            if (l + 1 < L) {
                z = z.cwiseMax(0.0);
                if (dropout_rng && hyper_.dropout > 0.0) {
                    masks[l].resize(z.rows(), z.cols());
                    const double keep = 1.0 - hyper_.dropout;
                    for (Eigen::Index i = 0; i < z.rows(); ++i) {
                        for (Eigen::Index j = 0; j < z.cols(); ++j) {
                            masks[l](i, j) =
                                dropout_rng->next_bernoulli(keep) ? 1.0 / keep : 0.0;
                        }
                    }
                    z = z.cwiseProduct(masks[l]);
                }
            }
            act[l + 1] = std::move(z);
        }
        const Vector resid = act[L].col(0) - y;
        const double loss = resid.squaredNorm() / static_cast<double>(n);

        Matrix delta = (2.0 / static_cast<double>(n)) * resid;
        for (std::size_t l = L; l-- > 0;) {
            gw[l] = delta.transpose() * act[l];
            gb[l] = delta.colwise().sum().transpose();
            if (l > 0) {
                Matrix back = delta * weights_[l];
                if (dropout_rng && hyper_.dropout > 0.0 && masks[l - 1].size() > 0) {
                    back = back.cwiseProduct(masks[l - 1]);
                }
                delta = back.cwiseProduct((act[l].array() > 0.0).cast<double>().matrix());
            }
        }
        return loss;
    }

    bool train(const Eigen::Ref<const Matrix>& X, const Eigen::Ref<const Vector>& y,
               double lr) {
        const Eigen::Index n = X.rows();
        CounterRng shuffle_rng(hyper_.seed, "mlp-shuffle");
        CounterRng dropout_rng(hyper_.seed, "mlp-dropout");

        std::vector<Matrix> mW(weights_.size()), vW(weights_.size());
        std::vector<Vector> mB(weights_.size()), vB(weights_.size());
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            mW[l] = Matrix::Zero(weights_[l].rows(), weights_[l].cols());
            vW[l] = mW[l];
            mB[l] = Vector::Zero(biases_[l].size());
            vB[l] = mB[l];
        }
        const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        long step = 0;

        std::vector<Eigen::Index> order(n);
        for (Eigen::Index i = 0; i < n; ++i) order[i] = i;

        std::vector<Matrix> gw(weights_.size());
        std::vector<Vector> gb(weights_.size());

        for (int epoch = 0; epoch < hyper_.epochs; ++epoch) {
            shuffle_rng.shuffle(order);
            for (Eigen::Index start = 0; start + hyper_.batch_size <= n;
                 start += hyper_.batch_size) {
                Matrix xb(hyper_.batch_size, X.cols());
                Vector yb(hyper_.batch_size);
                for (int i = 0; i < hyper_.batch_size; ++i) {
                    xb.row(i) = X.row(order[start + i]);
                    yb(i) = y(order[start + i]);
                }
                const double loss = backprop(xb, yb, &dropout_rng, gw, gb);
                if (!std::isfinite(loss)) return false;
                ++step;
                const double corr1 = 1.0 - std::pow(b1, step);
                const double corr2 = 1.0 - std::pow(b2, step);
                for (std::size_t l = 0; l < weights_.size(); ++l) {
                    mW[l] = b1 * mW[l] + (1 - b1) * gw[l];
                    vW[l] = b2 * vW[l] + (1 - b2) * gw[l].cwiseProduct(gw[l]);
                    weights_[l] -=
                        (lr / corr1) *
                        (mW[l].array() / ((vW[l].array() / corr2).sqrt() + eps)).matrix();
                    mB[l] = b1 * mB[l] + (1 - b1) * gb[l];
                    vB[l] = b2 * vB[l] + (1 - b2) * gb[l].cwiseProduct(gb[l]);
                    biases_[l] -=
                        (lr / corr1) *
                        (mB[l].array() / ((vB[l].array() / corr2).sqrt() + eps)).matrix();
                }
                if (!weights_[0].allFinite()) return false;
            }
        }
        return true;
    }

    MlpHyper hyper_;
    std::vector<int> dims_;
    std::vector<Matrix> weights_;
    std::vector<Vector> biases_;
    Vector mean_, scale_;
};

}  // namespace tca
