#include "tempcast/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tempcast/errors.hpp"
#include "tempcast/kernels.hpp"
#include "tempcast/linalg.hpp"

namespace tempcast {

namespace {

constexpr double kDlDenominatorFloor = 1e-12;

// Standard asymptotic Dickey-Fuller critical values, constant-only case
// (Fuller's tabulation, the values every mainstream implementation embeds).
constexpr double kAdfCrit1 = -3.43;
constexpr double kAdfCrit5 = -2.86;
constexpr double kAdfCrit10 = -2.57;

}  // namespace

CorrelogramResult acf(const std::vector<double>& series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (max_lag == 0 || n <= max_lag + 1) {
        throw LagTooLarge("acf needs |series| > max_lag + 1 and max_lag >= 1");
    }
    const auto [mn, mx] = std::minmax_element(series.begin(), series.end());
    if (*mn == *mx) throw ConstantSeries("acf is undefined for a constant series");

    double mean = kernels::sum(series.data(), n) / static_cast<double>(n);
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = series[i] - mean;
    const double denom = kernels::sum_sq(dev.data(), n);

    CorrelogramResult result;
    result.max_lag = max_lag;
    result.confidence_band = 1.96 / std::sqrt(static_cast<double>(n));
    result.values.resize(max_lag + 1);
    result.values[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        result.values[k] = kernels::dot(dev.data() + k, dev.data(), n - k) / denom;
    }
    return result;
}

CorrelogramResult pacf_from_acf(const std::vector<double>& acf_values,
                                double confidence_band) {
    const std::size_t max_lag = acf_values.size() - 1;
    CorrelogramResult result;
    result.max_lag = max_lag;
    result.confidence_band = confidence_band;
    result.values.assign(max_lag + 1, 0.0);
    result.values[0] = 1.0;
    if (max_lag == 0) return result;

    // Durbin-Levinson: phi[j] holds the order-(k-1) AR coefficients.
    std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
    phi[1] = acf_values[1];
    result.values[1] = acf_values[1];
    double v = 1.0 - acf_values[1] * acf_values[1];
    for (std::size_t k = 2; k <= max_lag; ++k) {
        if (v < kDlDenominatorFloor) {
            throw NumericalBreakdown(
                "Durbin-Levinson prediction variance fell below 1e-12");
        }
        std::swap(prev, phi);
        double num = acf_values[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * acf_values[k - j];
        const double phi_kk = num / v;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phi_kk * prev[k - j];
        phi[k] = phi_kk;
        result.values[k] = phi_kk;
        v *= (1.0 - phi_kk * phi_kk);
    }
    return result;
}

CorrelogramResult pacf(const std::vector<double>& series, std::size_t max_lag) {
    CorrelogramResult r = acf(series, max_lag);
    return pacf_from_acf(r.values, r.confidence_band);
}

AdfResult adf_test(const std::vector<double>& series, std::size_t max_lags) {
    const std::size_t n = series.size();
    if (n < 25 + max_lags) {
        throw SeriesTooShort("adf_test needs at least 25 + max_lags observations");
    }

    // First differences: diff[t] = x_{t+1} - x_t, t = 0..n-2.
    std::vector<double> diff(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) diff[t] = series[t + 1] - series[t];

    // Regression for lag order k at difference index t (target diff[t]):
    // regressors 1, x_t (= level lagged once), diff[t-1..t-k]. Valid t >= k.
    auto fit_order = [&](std::size_t k, std::size_t t_start) {
        const std::size_t rows = diff.size() - t_start;
        Matrix design(rows, k + 2);
        std::vector<double> target(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            const std::size_t t = t_start + r;
            target[r] = diff[t];
            design(r, 0) = 1.0;
            design(r, 1) = series[t];
            for (std::size_t i = 1; i <= k; ++i) design(r, 1 + i) = diff[t - i];
        }
        return ols(design, target);
    };

    // Select k by AIC on the common sample trimmed to max_lags so every
    // candidate sees the same observations.
    std::size_t best_k = 0;
    if (max_lags > 0) {
        double best_aic = std::numeric_limits<double>::infinity();
        const double rows = static_cast<double>(diff.size() - max_lags);
        for (std::size_t k = 0; k <= max_lags; ++k) {
            OlsResult fit = fit_order(k, max_lags);
            const double sigma2 = fit.sse / rows;
            const double aic = rows * (std::log(2.0 * 3.14159265358979323846 * sigma2) + 1.0) +
                               2.0 * static_cast<double>(k + 2);
            if (aic < best_aic) {
                best_aic = aic;
                best_k = k;
            }
        }
    }

    // Refit the winner on its own full sample.
    OlsResult fit = fit_order(best_k, best_k);

    AdfResult result;
    result.statistic = fit.coefficients[1] / fit.standard_errors[1];
    result.lags_used = best_k;
    result.crit_1pct = kAdfCrit1;
    result.crit_5pct = kAdfCrit5;
    result.crit_10pct = kAdfCrit10;
    result.stationary_at_5pct = result.statistic < result.crit_5pct;
    return result;
}

}  // namespace tempcast
