#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tempcast {

/// Model order (p, d, q). Valid when p + q >= 1 and d <= 2.
struct ArimaSpec {
    std::size_t p = 0;  // autoregressive order
    std::size_t d = 0;  // differencing order
    std::size_t q = 0;  // moving-average order
};

/// Goodness-of-fit summary shared by the fitted models.
struct ModelFitStats {
    double log_likelihood = 0.0;  // conditional Gaussian
    std::size_t k = 0;            // parameter count (coefficients + intercept + variance)
    std::size_t n = 0;            // effective observations
    double aic = 0.0;             // 2k - 2 log L
    double aic_per_obs = 0.0;     // aic / n
    double bic = 0.0;             // k ln n - 2 log L
};

struct ArimaModel {
    ArimaSpec spec;
    double intercept = 0.0;
    std::vector<double> ar_coeffs;  // phi_1..phi_p
    std::vector<double> ma_coeffs;  // theta_1..theta_q
    double residual_variance = 0.0;
    ModelFitStats fit;

    // Forecast seed: the tail of the differenced training series and its
    // residuals (newest last, max(p, q) of each), plus the last value at each
    // differencing level so forecasts can be mapped back to the data scale.
    std::vector<double> tail_values;
    std::vector<double> tail_residuals;
    std::vector<double> diff_seeds;  // diff_seeds[k] = last value of the k-times-differenced series, k < d
};

/// Apply the difference operator d times; output length |series| - d.
/// Throws SeriesTooShort when |series| <= d.
std::vector<double> difference(const std::vector<double>& series, std::size_t d);

/// Invert `difference`. seed_values[k] must be the first element of the
/// k-times-differenced original, k = 0..d-1; undifference(difference(x), seeds, d)
/// reproduces x exactly.
std::vector<double> undifference(const std::vector<double>& diffed,
                                 const std::vector<double>& seed_values, std::size_t d);

/// Fit by conditional least squares. Pure AR is solved in closed form (OLS on
/// the lag design, first p rows dropped); models with an MA part minimize the
/// conditional sum of squares by Nelder-Mead from the pure-AR warm start,
/// with presample residuals fixed at zero.
/// Throws InsufficientData (|series| - d < 10 (p+q) or not enough rows),
/// ConstantSeries, NonConvergence (over 2000 (p+q) objective evaluations),
/// InvalidHyperparameter (p+q = 0 or d > 2).
ArimaModel fit_arima(const std::vector<double>& series, const ArimaSpec& spec);

enum class Criterion { Aic, Bic };

struct OrderCandidate {
    std::size_t p = 0;
    bool ok = false;
    double aic = 0.0;
    double bic = 0.0;
    std::string error;  // failure reason when !ok
};

struct OrderSearchResult {
    ArimaSpec spec;
    ArimaModel model;
    std::vector<OrderCandidate> candidates;  // one per evaluated p, ascending
};

/// Exhaustive pure-AR order search: fits ARIMA(p, d, 0) for p = 1..max_p and
/// returns the fit minimizing the criterion, ties broken toward smaller p.
/// Candidate failures are recorded and skipped; ConstantSeries aborts the
/// search (no order can succeed), and AllFitsFailed is thrown when every
/// candidate failed.
OrderSearchResult select_order(const std::vector<double>& series, std::size_t max_p,
                               std::size_t d, Criterion criterion);

/// Iterate the fitted recursion forward with future shocks at their mean of
/// zero, then undo the differencing. Output length = horizon.
std::vector<double> forecast_arima(const ArimaModel& model, std::size_t horizon);

}  // namespace tempcast
