#pragma once

#include "rough_reduce/types.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace rough_reduce {

/// Fully connected feed-forward network of unipolar sigmoid units.
///
/// weights[l] maps layer l to layer l+1 and has sizes[l+1] rows and
/// sizes[l]+1 columns; the last column multiplies a constant-1 bias input.
template <typename Scalar>
struct Mlp {
    std::vector<Index> sizes;
    std::vector<MatrixX<Scalar>> weights;

    Index inputs() const { return sizes.front(); }
    Index outputs() const { return sizes.back(); }
    bool operator==(const Mlp&) const = default;
};

template <typename Scalar>
Scalar sigmoid(Scalar z) {
    z = std::clamp(z, Scalar(-40), Scalar(40));
    // Strictly below 1.
    return std::min(Scalar(1) / (Scalar(1) + std::exp(-z)), std::nextafter(Scalar(1), Scalar(0)));
}

/// Random weights, bias included, drawn uniformly from [-0.05, 0.05].
template <typename Scalar = double>
Mlp<Scalar> init_network(const std::vector<Index>& sizes, std::uint64_t seed) {
    if (sizes.size() < 2) throw Error("init_network: need at least an input and an output layer");
    for (auto s : sizes)
        if (s < 1) throw Error("init_network: every layer needs at least one unit");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-0.05, 0.05);
    Mlp<Scalar> net;
    net.sizes = sizes;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        MatrixX<Scalar> w(sizes[l + 1], sizes[l] + 1);
        for (Index r = 0; r < w.rows(); ++r)
            for (Index c = 0; c < w.cols(); ++c) w(r, c) = static_cast<Scalar>(uniform(rng));
        net.weights.push_back(std::move(w));
    }
    return net;
}

/// Activations of every layer, input first.
template <typename Scalar>
std::vector<VectorX<Scalar>> forward(const Mlp<Scalar>& net, const VectorX<Scalar>& x) {
    if (x.size() != net.inputs())
        throw Error("forward: input has " + std::to_string(x.size()) + " values, network expects " +
                    std::to_string(net.inputs()));
    std::vector<VectorX<Scalar>> act{x};
    for (const auto& w : net.weights) {
        const auto& prev = act.back();
        VectorX<Scalar> z = w.leftCols(prev.size()) * prev + w.col(prev.size());
        act.push_back(z.unaryExpr([](Scalar v) { return sigmoid(v); }));
    }
    return act;
}

template <typename Scalar>
VectorX<Scalar> predict(const Mlp<Scalar>& net, const VectorX<Scalar>& x) {
    return forward(net, x).back();
}

/// ½ Σ (target − output)² for one sample.
template <typename Scalar>
Scalar sample_error(const VectorX<Scalar>& output, const VectorX<Scalar>& target) {
    return (target - output).squaredNorm() / Scalar(2);
}

/// Gradient of the sample error with respect to every weight matrix.
template <typename Scalar>
std::vector<MatrixX<Scalar>> gradient(const Mlp<Scalar>& net, const VectorX<Scalar>& x,
                                      const VectorX<Scalar>& target) {
    if (target.size() != net.outputs())
        throw Error("gradient: target has " + std::to_string(target.size()) +
                    " values, network has " + std::to_string(net.outputs()) + " outputs");
    const auto act = forward(net, x);
    const std::size_t layers = net.weights.size();
    std::vector<MatrixX<Scalar>> grads(layers);

    // delta = (d − y) y (1 − y) at the output; the gradient is its negation times the input.
    const auto& y = act.back();
    VectorX<Scalar> delta = (target - y).cwiseProduct(y.cwiseProduct(VectorX<Scalar>::Ones(y.size()) - y));
    for (std::size_t l = layers; l-- > 0;) {
        const auto& in = act[l];
        MatrixX<Scalar> g(net.weights[l].rows(), net.weights[l].cols());
        g.leftCols(in.size()) = -delta * in.transpose();
        g.col(in.size()) = -delta;
        if (l > 0) {
            VectorX<Scalar> back = net.weights[l].leftCols(in.size()).transpose() * delta;
            delta = back.cwiseProduct(in.cwiseProduct(VectorX<Scalar>::Ones(in.size()) - in));
        }
        grads[l] = std::move(g);
    }
    return grads;
}

/// One online delta-rule update, w += η δ x. Returns the sample error before the update.
template <typename Scalar>
Scalar backprop_step(Mlp<Scalar>& net, const VectorX<Scalar>& x, const VectorX<Scalar>& target,
                     Scalar learning_rate) {
    const Scalar err = sample_error(predict(net, x), target);
    const auto grads = gradient(net, x, target);
    for (std::size_t l = 0; l < grads.size(); ++l) net.weights[l] -= learning_rate * grads[l];
    return err;
}

struct TrainConfig {
    double learning_rate = 0.5;
    double error_threshold = 0.01;
    int max_epochs = 5000;
    std::uint64_t seed = 1;
    bool shuffle = false;
    double target_on = 0.8;
    double target_off = 0.2;
};

struct TrainResult {
    int epochs = 0;
    double final_error = 0;
    bool converged = false;
    std::vector<double> trace;
};

/// Per-sample training in presentation order; stops once the summed epoch
/// error reaches `config.error_threshold` or after `config.max_epochs`.
///
/// `inputs` and `targets` hold one sample per column.
template <typename Scalar>
TrainResult train(Mlp<Scalar>& net, const MatrixX<Scalar>& inputs, const MatrixX<Scalar>& targets,
                  const TrainConfig& config) {
    if (inputs.cols() == 0) throw Error("train: empty dataset");
    if (inputs.cols() != targets.cols()) throw Error("train: input and target counts differ");
    if (!(config.learning_rate > 0)) throw Error("train: learning rate must be positive");
    if (!(config.error_threshold > 0)) throw Error("train: error threshold must be positive");
    if (config.max_epochs < 1) throw Error("train: max_epochs must be at least 1");
    if (!(0 < config.target_off && config.target_off < config.target_on && config.target_on < 1))
        throw Error("train: targets must satisfy 0 < off < on < 1");

    std::vector<Index> order(static_cast<std::size_t>(inputs.cols()));
    std::iota(order.begin(), order.end(), Index{0});
    std::mt19937_64 rng(config.seed);

    TrainResult result;
    const auto eta = static_cast<Scalar>(config.learning_rate);
    while (result.epochs < config.max_epochs) {
        if (config.shuffle) std::shuffle(order.begin(), order.end(), rng);
        double epoch_error = 0;
        for (auto i : order) {
            epoch_error += static_cast<double>(
                backprop_step(net, VectorX<Scalar>(inputs.col(i)), VectorX<Scalar>(targets.col(i)), eta));
        }
        ++result.epochs;
        result.trace.push_back(epoch_error);
        result.final_error = epoch_error;
        if (epoch_error <= config.error_threshold) {
            result.converged = true;
            break;
        }
    }
    return result;
}

/// Target vector with `on` at `label` and `off` elsewhere.
template <typename Scalar = double>
VectorX<Scalar> encode_target(Index label, Index classes, double on = 0.8, double off = 0.2) {
    if (label < 0 || label >= classes) throw Error("encode_target: label out of range");
    VectorX<Scalar> t = VectorX<Scalar>::Constant(classes, static_cast<Scalar>(off));
    t(label) = static_cast<Scalar>(on);
    return t;
}

/// Index of the strongest output; the lowest index wins ties.
template <typename Derived>
Index argmax(const Eigen::MatrixBase<Derived>& outputs) {
    Index best = 0;
    for (Index i = 1; i < outputs.size(); ++i)
        if (outputs(i) > outputs(best)) best = i;
    return best;
}

template <typename Scalar>
Index classify(const Mlp<Scalar>& net, const VectorX<Scalar>& x) {
    return argmax(predict(net, x));
}

} // namespace rough_reduce
