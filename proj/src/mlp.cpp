#include "tempcast/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tempcast/errors.hpp"
#include "tempcast/rng.hpp"

namespace tempcast {

MlpGrads MlpGrads::zeros_like(const MlpParams& params) {
    MlpGrads g;
    g.w1 = Matrix(params.w1.rows, params.w1.cols);
    g.b1.assign(params.b1.size(), 0.0);
    g.w2.assign(params.w2.size(), 0.0);
    g.b2 = 0.0;
    return g;
}

AdamState AdamState::zeros_like(const MlpParams& params) {
    AdamState s;
    s.m = MlpGrads::zeros_like(params);
    s.v = MlpGrads::zeros_like(params);
    return s;
}

double relu(double u) { return u > 0.0 ? u : 0.0; }

std::vector<double> relu(const std::vector<double>& u) {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = relu(u[i]);
    return out;
}

ForwardCache forward(const MlpParams& params, const std::vector<double>& x,
                     const std::vector<double>* mask, double dropout_rate) {
    const std::size_t hidden = params.w1.rows;
    const std::size_t input = params.w1.cols;
    if (x.size() != input) throw DimensionMismatch("mlp forward: wrong input length");
    if (params.b1.size() != hidden || params.w2.size() != hidden) {
        throw DimensionMismatch("mlp forward: inconsistent parameter shapes");
    }
    if (mask != nullptr && mask->size() != hidden) {
        throw DimensionMismatch("mlp forward: dropout mask length mismatch");
    }

    ForwardCache cache;
    cache.x = x;
    cache.train = (mask != nullptr);
    cache.dropout_rate = dropout_rate;
    if (mask != nullptr) cache.mask = *mask;

    cache.pre1.resize(hidden);
    cache.hidden.resize(hidden);
    const double keep = 1.0 - dropout_rate;
    for (std::size_t j = 0; j < hidden; ++j) {
        double acc = params.b1[j];
        const double* row = params.w1.row(j);
        for (std::size_t i = 0; i < input; ++i) acc += row[i] * x[i];
        cache.pre1[j] = acc;
        double h = relu(acc);
        if (cache.train) h *= cache.mask[j] / keep;  // inverted dropout
        cache.hidden[j] = h;
    }
    double y = params.b2;
    for (std::size_t j = 0; j < hidden; ++j) y += params.w2[j] * cache.hidden[j];
    cache.y = y;
    return cache;
}

double predict(const MlpParams& params, const std::vector<double>& x) {
    return forward(params, x).y;
}

MseResult mse_loss(const std::vector<double>& pred, const std::vector<double>& target) {
    if (pred.size() != target.size()) {
        throw DimensionMismatch("mse_loss: prediction/target length mismatch");
    }
    if (pred.empty()) throw EmptyInput("mse_loss: empty inputs");
    MseResult result;
    result.grad.resize(pred.size());
    const double n = static_cast<double>(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        result.loss += d * d;
        result.grad[i] = 2.0 * d / n;
    }
    result.loss /= n;
    return result;
}

MlpGrads backward(const MlpParams& params, const ForwardCache& cache, double dloss_dy) {
    const std::size_t hidden = params.w1.rows;
    const std::size_t input = params.w1.cols;
    if (cache.x.size() != input || cache.pre1.size() != hidden ||
        cache.hidden.size() != hidden || (cache.train && cache.mask.size() != hidden)) {
        throw StaleCache("backward: cache does not match these parameters");
    }

    MlpGrads grads = MlpGrads::zeros_like(params);
    grads.b2 = dloss_dy;
    const double keep = 1.0 - cache.dropout_rate;
    for (std::size_t j = 0; j < hidden; ++j) {
        grads.w2[j] = dloss_dy * cache.hidden[j];
        double dh = dloss_dy * params.w2[j];
        if (cache.train) dh *= cache.mask[j] / keep;
        const double dpre = (cache.pre1[j] > 0.0) ? dh : 0.0;  // ReLU gate, 0 at 0
        grads.b1[j] = dpre;
        double* row = grads.w1.row(j);
        for (std::size_t i = 0; i < input; ++i) row[i] = dpre * cache.x[i];
    }
    return grads;
}

namespace {

void accumulate(MlpGrads& into, const MlpGrads& delta) {
    for (std::size_t i = 0; i < into.w1.data.size(); ++i) into.w1.data[i] += delta.w1.data[i];
    for (std::size_t i = 0; i < into.b1.size(); ++i) into.b1[i] += delta.b1[i];
    for (std::size_t i = 0; i < into.w2.size(); ++i) into.w2[i] += delta.w2[i];
    into.b2 += delta.b2;
}

/// Apply fn(theta, grad, m, v) over every coordinate of the parameter set.
template <typename Fn>
void for_each_param(MlpParams& params, const MlpGrads& grads, AdamState& state, Fn fn) {
    for (std::size_t i = 0; i < params.w1.data.size(); ++i) {
        fn(params.w1.data[i], grads.w1.data[i], state.m.w1.data[i], state.v.w1.data[i]);
    }
    for (std::size_t i = 0; i < params.b1.size(); ++i) {
        fn(params.b1[i], grads.b1[i], state.m.b1[i], state.v.b1[i]);
    }
    for (std::size_t i = 0; i < params.w2.size(); ++i) {
        fn(params.w2[i], grads.w2[i], state.m.w2[i], state.v.w2[i]);
    }
    fn(params.b2, grads.b2, state.m.b2, state.v.b2);
}

}  // namespace

void adam_step(MlpParams& params, const MlpGrads& grads, AdamState& state,
               double learning_rate) {
    state.step_count += 1;
    const double t = static_cast<double>(state.step_count);
    const double bc1 = 1.0 - std::pow(state.beta1, t);
    const double bc2 = 1.0 - std::pow(state.beta2, t);
    const double b1 = state.beta1, b2 = state.beta2, eps = state.epsilon;
    for_each_param(params, grads, state,
                   [&](double& theta, double g, double& m, double& v) {
                       m = b1 * m + (1.0 - b1) * g;
                       v = b2 * v + (1.0 - b2) * g * g;
                       const double mhat = m / bc1;
                       const double vhat = v / bc2;
                       theta -= learning_rate * mhat / (std::sqrt(vhat) + eps);
                   });
}

MlpTrainResult train_mlp(const std::vector<double>& series, const MlpConfig& config) {
    if (config.input_size < 1 || config.hidden_size < 1 || config.batch_size < 1) {
        throw InvalidHyperparameter("mlp sizes must be at least 1");
    }
    if (!(config.dropout_rate >= 0.0) || config.dropout_rate >= 1.0) {
        throw InvalidHyperparameter("dropout rate must lie in [0, 1)");
    }
    if (series.size() <= config.input_size + 1) {
        throw SeriesTooShort("mlp training needs more than input_size + 1 observations");
    }

    MlpTrainResult result;
    result.standardizer = fit_standardizer(series);
    const std::vector<double> z = result.standardizer.apply(series);
    const std::vector<WindowSample> samples = sliding_windows(z, config.input_size);

    Rng rng(config.seed);

    // Glorot-uniform weights, zero biases.
    auto uniform_sym = [&](double limit) { return (2.0 * rng.uniform01() - 1.0) * limit; };
    MlpParams& params = result.params;
    params.w1 = Matrix(config.hidden_size, config.input_size);
    const double limit1 =
        std::sqrt(6.0 / static_cast<double>(config.input_size + config.hidden_size));
    for (auto& w : params.w1.data) w = uniform_sym(limit1);
    params.b1.assign(config.hidden_size, 0.0);
    const double limit2 = std::sqrt(6.0 / static_cast<double>(config.hidden_size + 1));
    params.w2.resize(config.hidden_size);
    for (auto& w : params.w2) w = uniform_sym(limit2);
    params.b2 = 0.0;

    AdamState adam = AdamState::zeros_like(params);
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> mask(config.hidden_size, 1.0);
    const bool use_dropout = config.dropout_rate > 0.0;

    result.loss_history.reserve(config.epochs);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_squared_error = 0.0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t end = std::min(order.size(), start + config.batch_size);
            const double batch_n = static_cast<double>(end - start);
            MlpGrads batch_grads = MlpGrads::zeros_like(params);
            for (std::size_t s = start; s < end; ++s) {
                const WindowSample& sample = samples[order[s]];
                if (use_dropout) {
                    for (auto& m : mask) {
                        m = (rng.uniform01() >= config.dropout_rate) ? 1.0 : 0.0;
                    }
                }
                ForwardCache cache =
                    use_dropout ? forward(params, sample.input, &mask, config.dropout_rate)
                                : forward(params, sample.input);
                const double err = cache.y - sample.target;
                epoch_squared_error += err * err;
                // d(batch MSE)/dy for this sample
                accumulate(batch_grads, backward(params, cache, 2.0 * err / batch_n));
            }
            adam_step(params, batch_grads, adam, config.learning_rate);
        }
        result.loss_history.push_back(epoch_squared_error /
                                      static_cast<double>(samples.size()));
    }
    return result;
}

std::vector<double> forecast_mlp(const MlpParams& params, const Standardizer& standardizer,
                                 const std::vector<double>& recent, std::size_t horizon) {
    if (recent.size() != params.w1.cols) {
        throw DimensionMismatch("forecast seed must hold exactly input_size observations");
    }
    std::vector<double> window = standardizer.apply(recent);
    std::vector<double> out;
    out.reserve(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        const double y = predict(params, window);
        out.push_back(standardizer.invert(y));
        window.erase(window.begin());
        window.push_back(y);
    }
    return out;
}

}  // namespace tempcast
