#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tempcast/linalg.hpp"
#include "tempcast/series.hpp"

namespace tempcast {

/// Architecture and training hyperparameters. Defaults: 3 inputs, 4 hidden
/// units, dropout 0.2, 2000 epochs, batches of 12, Adam at 0.001.
struct MlpConfig {
    std::size_t input_size = 3;
    std::size_t hidden_size = 4;
    double dropout_rate = 0.2;  // probability of dropping a hidden unit
    std::size_t epochs = 2000;
    std::size_t batch_size = 12;
    double learning_rate = 0.001;
    std::uint64_t seed = 0;
};

/// One hidden layer, one linear output neuron.
struct MlpParams {
    Matrix w1;                // hidden x input
    std::vector<double> b1;   // hidden
    std::vector<double> w2;   // 1 x hidden, stored as a vector
    double b2 = 0.0;
};

/// Parameter-shaped accumulator (gradients, Adam moments).
struct MlpGrads {
    Matrix w1;
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0.0;

    static MlpGrads zeros_like(const MlpParams& params);
};

/// Adam accumulators with the original defaults.
struct AdamState {
    MlpGrads m;  // first moments
    MlpGrads v;  // second moments
    std::size_t step_count = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState zeros_like(const MlpParams& params);
};

double relu(double u);
std::vector<double> relu(const std::vector<double>& u);

/// Everything backward() needs from a forward pass.
struct ForwardCache {
    std::vector<double> x;
    std::vector<double> pre1;    // hidden pre-activations
    std::vector<double> hidden;  // after ReLU (and dropout scaling in train mode)
    std::vector<double> mask;    // per-unit keep mask; empty in eval mode
    bool train = false;
    double dropout_rate = 0.0;
    double y = 0.0;
};

/// Forward pass. Pass mask = nullptr for eval mode. In train mode the kept
/// activations are scaled by 1/(1 - dropout_rate) (inverted dropout), so eval
/// mode applies no compensation. Throws DimensionMismatch.
ForwardCache forward(const MlpParams& params, const std::vector<double>& x,
                     const std::vector<double>* mask = nullptr, double dropout_rate = 0.0);

/// Eval-mode forward returning just the prediction.
double predict(const MlpParams& params, const std::vector<double>& x);

struct MseResult {
    double loss = 0.0;
    std::vector<double> grad;  // d loss / d pred = 2 (pred - target) / N
};

/// Mean squared error and its gradient. Throws DimensionMismatch, EmptyInput.
MseResult mse_loss(const std::vector<double>& pred, const std::vector<double>& target);

/// Analytic gradients for one sample given d loss / d y. Respects the ReLU
/// subgradient (0 at 0) and the dropout mask captured in the cache. Throws
/// StaleCache when the cache shapes do not match the parameters.
MlpGrads backward(const MlpParams& params, const ForwardCache& cache, double dloss_dy);

/// In-place Adam update:
///   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2
///   theta <- theta - lr * mhat / (sqrt(vhat) + eps)   (bias-corrected)
void adam_step(MlpParams& params, const MlpGrads& grads, AdamState& state,
               double learning_rate);

struct MlpTrainResult {
    MlpParams params;
    std::vector<double> loss_history;  // per-epoch mean training MSE
    Standardizer standardizer;         // fitted on the training series
};

/// Standardize the series, build sliding windows of input_size, and train
/// with per-epoch reshuffling and mini-batches (final short batch kept).
/// Fully deterministic given config.seed. Throws SeriesTooShort,
/// ZeroVariance, InvalidHyperparameter.
MlpTrainResult train_mlp(const std::vector<double>& series, const MlpConfig& config);

/// Recursive multi-step forecast: predict one step, append, repeat. `recent`
/// is the last input_size observations on the data scale; outputs are
/// destandardized. Dropout is inactive. Throws DimensionMismatch.
std::vector<double> forecast_mlp(const MlpParams& params, const Standardizer& standardizer,
                                 const std::vector<double>& recent, std::size_t horizon);

}  // namespace tempcast
