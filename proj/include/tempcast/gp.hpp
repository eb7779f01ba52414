#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "tempcast/linalg.hpp"
#include "tempcast/series.hpp"

namespace tempcast {

/// White-noise component: contributes std^2 to the covariance of a training
/// point with itself (Kronecker delta on the training index), 0 elsewhere.
struct NoiseKernel {
    double std;
    explicit NoiseKernel(double std_dev);  // requires std > 0
};

/// std^2 * exp(-2 sin^2(pi |xi - xj| / period) / length_scale^2)
struct PeriodicKernel {
    double length_scale;
    double std;
    double period;
    PeriodicKernel(double length_scale_, double std_dev, double period_);
};

/// std^2 * exp(-(xi - xj)^2 / (2 length_scale^2))
struct RbfKernel {
    double length_scale;
    double std;
    RbfKernel(double length_scale_, double std_dev);
};

using KernelComponent = std::variant<NoiseKernel, PeriodicKernel, RbfKernel>;

/// Additive composite kernel. Throws InvalidHyperparameter when empty.
struct KernelSpec {
    std::vector<KernelComponent> components;
    explicit KernelSpec(std::vector<KernelComponent> components_);

    /// Total white-noise variance (sum of Noise std^2; 0 without one).
    double noise_variance() const;
};

/// Covariance between two inputs. The smooth components (Periodic, Rbf)
/// always contribute; Noise contributes its variance only when same_index
/// is true, i.e. when both arguments name the same training point.
double kernel_eval(const KernelSpec& spec, double xi, double xj, bool same_index = false);

/// Parse a composite kernel description like "N(1)+P(1,1,1)+RBF(4,1)".
/// Component forms: N(std); P(length_scale, std, period); RBF(length_scale,
/// std). With zero_length_scale_as_one, a literal length scale of 0 is read
/// as 1 (interpretation for published sweep tables whose "0" entries are
/// inconsistent with the kernel formulas). Throws MalformedKernel on syntax
/// errors and InvalidHyperparameter on out-of-domain values.
KernelSpec parse_kernel(const std::string& text, bool zero_length_scale_as_one = false);

/// Canonical description string; parse_kernel round-trips it exactly.
std::string kernel_to_string(const KernelSpec& spec);

/// Fitted zero-mean GP posterior over standardized targets.
struct GpPosterior {
    explicit GpPosterior(KernelSpec kernel_) : kernel(std::move(kernel_)) {}

    KernelSpec kernel;
    std::vector<double> train_inputs;   // standardized to [0, 1]
    std::vector<double> train_targets;  // standardized values
    CholeskyFactor chol;                // of K + noise_variance * I
    std::vector<double> alpha;          // (K + noise_variance I)^{-1} targets
    double noise_variance = 0.0;
    double input_offset = 0.0;  // raw input -> (raw - offset) / scale
    double input_scale = 1.0;
    Standardizer standardizer;  // targets' mean/std for destandardization
};

/// Fit the posterior: standardize inputs to [0, 1] over the training span and
/// targets to zero mean / unit variance, build the Gram matrix, factorize
/// K + noise_variance*I with the jitter ladder, and precompute alpha.
/// Throws DimensionMismatch, InsufficientData, DuplicateInputs, ZeroVariance,
/// NotPositiveDefinite.
GpPosterior fit_gp(const KernelSpec& kernel, const std::vector<double>& inputs,
                   const std::vector<double>& targets);

struct GpPrediction {
    std::vector<double> means;      // data scale
    std::vector<double> variances;  // data-scale variance, clamped at 0
};

/// Posterior mean and variance at each query input (raw scale; queries may
/// lie outside the training span). Noise is excluded at query points.
GpPrediction predict_gp(const GpPosterior& posterior, const std::vector<double>& query_inputs);

/// One row of a kernel sweep: the candidate description and either its
/// held-out RMSE or a structured failure reason.
struct KernelTrial {
    std::string kernel;
    bool ok = false;
    double rmse = 0.0;  // meaningful only when ok
    std::string error;  // reason when !ok
};

/// Fit each candidate description on (inputs, targets), evaluate RMSE on the
/// held-out set, and report all rows sorted by RMSE ascending with failures
/// last (ties and failures keep candidate order). A candidate that fails to
/// parse or factorize is recorded, never aborts the sweep. Throws EmptyInput
/// when candidates is empty; DimensionMismatch on mismatched set lengths.
std::vector<KernelTrial> kernel_grid_trial(const std::vector<double>& train_inputs,
                                           const std::vector<double>& train_targets,
                                           const std::vector<double>& test_inputs,
                                           const std::vector<double>& test_targets,
                                           const std::vector<std::string>& candidates);

}  // namespace tempcast
