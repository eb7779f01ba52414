#include "tempcast/ets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tempcast/errors.hpp"
#include "tempcast/optimize.hpp"

namespace tempcast {

namespace {

double clamp_param(double v) { return std::min(0.999, std::max(0.001, v)); }

}  // namespace

HoltWintersState initialize_state(const std::vector<double>& series,
                                  const HoltWintersParams& params) {
    const std::size_t p = params.period;
    if (p < 2) throw InvalidHyperparameter("holt-winters period must be at least 2");
    if (series.size() < 2 * p) {
        throw SeriesTooShort("holt-winters initialization needs two full periods");
    }
    double mean1 = 0.0, mean2 = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        mean1 += series[i];
        mean2 += series[p + i];
    }
    mean1 /= static_cast<double>(p);
    mean2 /= static_cast<double>(p);

    HoltWintersState state;
    state.level = mean1;
    state.trend = params.trend_enabled ? (mean2 - mean1) / static_cast<double>(p) : 0.0;
    state.seasonals.resize(p);
    for (std::size_t i = 0; i < p; ++i) state.seasonals[i] = series[i] - mean1;
    state.t = 0;
    return state;
}

SmoothResult smooth(const std::vector<double>& series, const HoltWintersParams& params,
                    const HoltWintersState& initial_state) {
    const std::size_t p = params.period;
    if (initial_state.seasonals.size() != p) {
        throw DimensionMismatch("state seasonal count does not match the period");
    }
    SmoothResult result;
    result.fitted.resize(series.size());

    double level = initial_state.level;
    double trend = initial_state.trend;
    // Ring buffer over the seasonal window: `head` points at the oldest
    // component S_{t-p+1}, which is exactly the one the next step consumes;
    // its slot is then reused for the newly produced S_{t+1}.
    std::vector<double> ring = initial_state.seasonals;
    std::size_t head = 0;

    for (std::size_t i = 0; i < series.size(); ++i) {
        const double x = series[i];
        const double s_old = ring[head];
        const double prediction = level + trend + s_old;
        result.fitted[i] = prediction;
        const double err = x - prediction;
        result.sse += err * err;

        const double prev_level = level;
        level = params.alpha * (x - s_old) + (1.0 - params.alpha) * (prev_level + trend);
        if (params.trend_enabled) {
            trend = params.beta * (level - prev_level) + (1.0 - params.beta) * trend;
        }
        ring[head] = params.gamma * (x - level) + (1.0 - params.gamma) * s_old;
        head = (head + 1) % p;
    }

    result.state.level = level;
    result.state.trend = trend;
    result.state.t = initial_state.t + series.size();
    // Unroll the ring into chronological order, oldest first.
    result.state.seasonals.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        result.state.seasonals[j] = ring[(head + j) % p];
    }
    return result;
}

HoltWintersFit fit_holt_winters(const std::vector<double>& series, std::size_t period,
                                bool trend_enabled) {
    HoltWintersParams params;
    params.period = period;
    params.trend_enabled = trend_enabled;

    const HoltWintersState init = initialize_state(series, params);

    auto sse_at = [&](double alpha, double beta, double gamma) {
        HoltWintersParams candidate = params;
        candidate.alpha = alpha;
        candidate.beta = beta;
        candidate.gamma = gamma;
        return smooth(series, candidate, init).sse;
    };

    // Exhaustive coarse grid; ascending loops with a strict comparison give
    // the lexicographically smallest triple on ties.
    double best_sse = std::numeric_limits<double>::infinity();
    double best_alpha = 0.0, best_beta = 0.0, best_gamma = 0.0;
    for (int ia = 1; ia <= 19; ++ia) {
        const double alpha = 0.05 * ia;
        for (int ib = 1; ib <= (trend_enabled ? 19 : 1); ++ib) {
            const double beta = trend_enabled ? 0.05 * ib : 0.0;
            for (int ig = 1; ig <= 19; ++ig) {
                const double gamma = 0.05 * ig;
                const double sse = sse_at(alpha, beta, gamma);
                if (sse < best_sse) {
                    best_sse = sse;
                    best_alpha = alpha;
                    best_beta = beta;
                    best_gamma = gamma;
                }
            }
        }
    }

    // Local refinement from the winning grid point. Parameters are clamped
    // into (0.001, 0.999) inside the objective, so the optimum respects the
    // open-interval constraint.
    std::vector<double> x0;
    if (trend_enabled) {
        x0 = {best_alpha, best_beta, best_gamma};
    } else {
        x0 = {best_alpha, best_gamma};
    }
    auto objective = [&](const std::vector<double>& v) {
        if (trend_enabled) {
            return sse_at(clamp_param(v[0]), clamp_param(v[1]), clamp_param(v[2]));
        }
        return sse_at(clamp_param(v[0]), 0.0, clamp_param(v[1]));
    };
    NelderMeadOptions options;
    options.initial_step = 0.02;
    options.max_evals = 400 * x0.size();
    options.f_tol = 1e-12;
    options.x_tol = 1e-6;
    NelderMeadResult refined = nelder_mead(objective, x0, options);

    HoltWintersFit fit;
    fit.params = params;
    if (refined.fval <= best_sse) {
        if (trend_enabled) {
            fit.params.alpha = clamp_param(refined.x[0]);
            fit.params.beta = clamp_param(refined.x[1]);
            fit.params.gamma = clamp_param(refined.x[2]);
        } else {
            fit.params.alpha = clamp_param(refined.x[0]);
            fit.params.beta = 0.0;
            fit.params.gamma = clamp_param(refined.x[1]);
        }
    } else {
        fit.params.alpha = best_alpha;
        fit.params.beta = best_beta;
        fit.params.gamma = best_gamma;
    }
    SmoothResult final_run = smooth(series, fit.params, init);
    fit.state = final_run.state;
    fit.sse = final_run.sse;
    return fit;
}

std::vector<double> forecast_ets(const HoltWintersState& state,
                                 const HoltWintersParams& params, std::size_t horizon) {
    const std::size_t p = params.period;
    if (state.seasonals.size() != p) {
        throw DimensionMismatch("state seasonal count does not match the period");
    }
    std::vector<double> out(horizon);
    for (std::size_t n = 1; n <= horizon; ++n) {
        double value = state.level + state.seasonals[(n - 1) % p];
        if (params.trend_enabled) value += static_cast<double>(n) * state.trend;
        out[n - 1] = value;
    }
    return out;
}

}  // namespace tempcast
