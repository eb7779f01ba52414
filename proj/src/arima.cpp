#include "tempcast/arima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tempcast/errors.hpp"
#include "tempcast/kernels.hpp"
#include "tempcast/linalg.hpp"
#include "tempcast/optimize.hpp"

namespace tempcast {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_spec(const ArimaSpec& spec) {
    if (spec.p + spec.q == 0) {
        throw InvalidHyperparameter("arima spec needs p + q >= 1");
    }
    if (spec.d > 2) throw InvalidHyperparameter("arima differencing order is capped at 2");
}

ModelFitStats fit_stats(double sse, std::size_t n_eff, std::size_t k) {
    ModelFitStats stats;
    stats.k = k;
    stats.n = n_eff;
    const double n = static_cast<double>(n_eff);
    const double sigma2 = sse / n;
    stats.log_likelihood = -0.5 * n * (std::log(2.0 * kPi * sigma2) + 1.0);
    stats.aic = 2.0 * static_cast<double>(k) - 2.0 * stats.log_likelihood;
    stats.aic_per_obs = stats.aic / n;
    stats.bic = static_cast<double>(k) * std::log(n) - 2.0 * stats.log_likelihood;
    return stats;
}

/// Conditional residuals of an ARMA(p, q) parameterization on z, conditioning
/// on the first p observations; presample shocks are zero. Returns residuals
/// e_p..e_{n-1} (length n - p).
std::vector<double> css_residuals(const std::vector<double>& z, double intercept,
                                  const std::vector<double>& phi,
                                  const std::vector<double>& theta) {
    const std::size_t p = phi.size();
    const std::size_t q = theta.size();
    const std::size_t n = z.size();
    std::vector<double> resid(n - p);
    for (std::size_t t = p; t < n; ++t) {
        double pred = intercept;
        for (std::size_t i = 0; i < p; ++i) pred += phi[i] * z[t - 1 - i];
        for (std::size_t j = 0; j < q; ++j) {
            // e_{t-1-j} lives at resid index t-1-j-p when it is in-sample.
            if (t >= p + 1 + j) pred += theta[j] * resid[t - 1 - j - p];
        }
        resid[t - p] = z[t] - pred;
    }
    return resid;
}

}  // namespace

std::vector<double> difference(const std::vector<double>& series, std::size_t d) {
    if (series.size() <= d) throw SeriesTooShort("cannot difference: series length <= d");
    std::vector<double> out = series;
    for (std::size_t round = 0; round < d; ++round) {
        for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
        out.pop_back();
    }
    return out;
}

std::vector<double> undifference(const std::vector<double>& diffed,
                                 const std::vector<double>& seed_values, std::size_t d) {
    if (seed_values.size() != d) {
        throw DimensionMismatch("undifference needs exactly d seed values");
    }
    std::vector<double> out = diffed;
    for (std::size_t round = d; round-- > 0;) {
        // seed_values[round] is the first element of the round-times
        // differenced series; integrate once.
        std::vector<double> next(out.size() + 1);
        next[0] = seed_values[round];
        for (std::size_t i = 0; i < out.size(); ++i) next[i + 1] = next[i] + out[i];
        out = std::move(next);
    }
    return out;
}

ArimaModel fit_arima(const std::vector<double>& series, const ArimaSpec& spec) {
    validate_spec(spec);
    const std::size_t p = spec.p, q = spec.q;

    std::vector<double> z = difference(series, spec.d);
    const std::size_t n = z.size();
    if (n < 10 * (p + q) || n < p + q + 3 || n <= p) {
        throw InsufficientData("series too short for the requested arima order");
    }
    const auto [mn, mx] = std::minmax_element(z.begin(), z.end());
    if (*mn == *mx) throw ConstantSeries("differenced series is constant");

    ArimaModel model;
    model.spec = spec;

    const std::size_t n_eff = n - p;
    const std::size_t k = p + q + 2;  // coefficients, intercept, variance

    // Pure-AR coefficients by OLS on the lag design; also the warm start for
    // the ARMA objective.
    auto fit_pure_ar = [&](std::size_t order) {
        const std::size_t rows = n - order;
        Matrix design(rows, order + 1);
        std::vector<double> target(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            const std::size_t t = order + r;
            target[r] = z[t];
            design(r, 0) = 1.0;
            for (std::size_t i = 0; i < order; ++i) design(r, 1 + i) = z[t - 1 - i];
        }
        return ols(design, target);
    };

    if (q == 0) {
        OlsResult fit = fit_pure_ar(p);
        model.intercept = fit.coefficients[0];
        model.ar_coeffs.assign(fit.coefficients.begin() + 1, fit.coefficients.end());
        model.residual_variance = fit.sse / static_cast<double>(n_eff);
        model.fit = fit_stats(fit.sse, n_eff, k);
    } else {
        // Warm start: pure AR(p) when p > 0, otherwise just the mean.
        std::vector<double> x0(1 + p + q, 0.0);
        if (p > 0) {
            OlsResult warm = fit_pure_ar(p);
            for (std::size_t i = 0; i <= p; ++i) x0[i] = warm.coefficients[i];
        } else {
            x0[0] = kernels::sum(z.data(), n) / static_cast<double>(n);
        }

        auto objective = [&](const std::vector<double>& params) {
            std::vector<double> phi(params.begin() + 1, params.begin() + 1 + static_cast<long>(p));
            std::vector<double> theta(params.begin() + 1 + static_cast<long>(p), params.end());
            auto resid = css_residuals(z, params[0], phi, theta);
            return kernels::sum_sq(resid.data(), resid.size());
        };

        NelderMeadOptions options;
        options.initial_step = 0.1;
        options.max_evals = 2000 * (p + q);
        options.f_tol = 1e-12;
        options.x_tol = 1e-7;
        NelderMeadResult sol = nelder_mead(objective, x0, options);
        if (!sol.converged) {
            throw NonConvergence("conditional sum of squares search exceeded its budget");
        }

        model.intercept = sol.x[0];
        model.ar_coeffs.assign(sol.x.begin() + 1, sol.x.begin() + 1 + static_cast<long>(p));
        model.ma_coeffs.assign(sol.x.begin() + 1 + static_cast<long>(p), sol.x.end());
        model.residual_variance = sol.fval / static_cast<double>(n_eff);
        model.fit = fit_stats(sol.fval, n_eff, k);
    }

    // Forecast seeds: differenced-scale tail and residuals...
    auto resid = css_residuals(z, model.intercept, model.ar_coeffs, model.ma_coeffs);
    const std::size_t tail = std::max(p, q);
    model.tail_values.assign(z.end() - static_cast<long>(std::min(tail, n)), z.end());
    model.tail_residuals.assign(resid.end() - static_cast<long>(std::min(tail, resid.size())),
                                resid.end());
    // ...and the last value at each differencing level for reintegration.
    std::vector<double> level = series;
    for (std::size_t kd = 0; kd < spec.d; ++kd) {
        model.diff_seeds.push_back(level.back());
        level = difference(level, 1);
    }
    return model;
}

OrderSearchResult select_order(const std::vector<double>& series, std::size_t max_p,
                               std::size_t d, Criterion criterion) {
    if (max_p == 0) throw InvalidHyperparameter("select_order needs max_p >= 1");
    {
        // No candidate can survive a constant differenced series; fail fast.
        std::vector<double> z = difference(series, d);
        const auto [mn, mx] = std::minmax_element(z.begin(), z.end());
        if (*mn == *mx) throw ConstantSeries("differenced series is constant");
    }

    OrderSearchResult result;
    bool have_best = false;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t p = 1; p <= max_p; ++p) {
        OrderCandidate candidate;
        candidate.p = p;
        try {
            ArimaModel model = fit_arima(series, ArimaSpec{p, d, 0});
            candidate.ok = true;
            candidate.aic = model.fit.aic;
            candidate.bic = model.fit.bic;
            const double value = (criterion == Criterion::Aic) ? model.fit.aic : model.fit.bic;
            if (!have_best || value < best_value) {  // strict: ties keep smaller p
                have_best = true;
                best_value = value;
                result.spec = model.spec;
                result.model = std::move(model);
            }
        } catch (const Error& e) {
            candidate.error = e.what();
        }
        result.candidates.push_back(std::move(candidate));
    }
    if (!have_best) throw AllFitsFailed("no autoregressive order could be fitted");
    return result;
}

std::vector<double> forecast_arima(const ArimaModel& model, std::size_t horizon) {
    if (horizon == 0) return {};
    const std::size_t p = model.spec.p, q = model.spec.q;

    // history holds the freshest differenced-scale values (newest last);
    // shocks mirrors it with residuals, zero for forecast steps.
    std::vector<double> history = model.tail_values;
    std::vector<double> shocks = model.tail_residuals;
    std::vector<double> forecast(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        double pred = model.intercept;
        for (std::size_t i = 0; i < p; ++i) {
            if (history.size() > i) pred += model.ar_coeffs[i] * history[history.size() - 1 - i];
        }
        for (std::size_t j = 0; j < q; ++j) {
            if (shocks.size() > j) pred += model.ma_coeffs[j] * shocks[shocks.size() - 1 - j];
        }
        forecast[h] = pred;
        history.push_back(pred);
        shocks.push_back(0.0);  // future disturbances at their mean
    }

    // Reintegrate: at each level the forecast continues from that level's
    // last training value.
    for (std::size_t kd = model.spec.d; kd-- > 0;) {
        double prev = model.diff_seeds[kd];
        for (std::size_t h = 0; h < horizon; ++h) {
            prev += forecast[h];
            forecast[h] = prev;
        }
    }
    return forecast;
}

}  // namespace tempcast
