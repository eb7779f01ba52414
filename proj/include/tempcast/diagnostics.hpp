#pragma once

#include <cstddef>
#include <vector>

namespace tempcast {

/// ACF or PACF values for lags 0..max_lag, plus the white-noise confidence
/// band half-width 1.96/sqrt(N).
struct CorrelogramResult {
    std::size_t max_lag = 0;
    std::vector<double> values;  // indexed by lag; values[0] == 1
    double confidence_band = 0.0;
};

/// Augmented Dickey-Fuller outcome. stationary_at_5pct is derived:
/// statistic < crit_5pct.
struct AdfResult {
    double statistic = 0.0;
    std::size_t lags_used = 0;
    double crit_1pct = 0.0;
    double crit_5pct = 0.0;
    double crit_10pct = 0.0;
    bool stationary_at_5pct = false;
};

/// Sample autocorrelation with the biased (N-denominator) estimator:
/// r(k) = sum_{t=k+1..N} (x_t - xbar)(x_{t-k} - xbar) / sum (x_t - xbar)^2.
/// The biased form keeps the autocovariance sequence positive semi-definite,
/// which the Durbin-Levinson recursion depends on.
/// Throws ConstantSeries, LagTooLarge (needs |series| > max_lag + 1).
CorrelogramResult acf(const std::vector<double>& series, std::size_t max_lag);

/// Partial autocorrelation via the Durbin-Levinson recursion on the biased
/// ACF. pacf[0] = 1 and pacf[1] = acf[1]. Throws as acf, plus
/// NumericalBreakdown when a recursion denominator falls below 1e-12.
CorrelogramResult pacf(const std::vector<double>& series, std::size_t max_lag);

/// Durbin-Levinson on an externally supplied autocorrelation sequence
/// (acf_values[0] must be 1). Exposed so the recursion guard is testable on
/// handcrafted near-degenerate sequences.
CorrelogramResult pacf_from_acf(const std::vector<double>& acf_values,
                                double confidence_band);

/// Augmented Dickey-Fuller unit-root test with a constant and no trend:
///   dx_t = c + gamma * x_{t-1} + sum_{i=1..k} delta_i * dx_{t-i} + e_t.
/// The lag order k in 0..max_lags minimizes AIC over a common sample trimmed
/// to max_lags (so the candidates are comparable), then the chosen order is
/// refit on its full sample. Critical values are the standard asymptotic
/// Dickey-Fuller constants for the constant-only case.
/// Throws SeriesTooShort (needs |series| >= 25 + max_lags) and RankDeficient.
AdfResult adf_test(const std::vector<double>& series, std::size_t max_lags);

}  // namespace tempcast
