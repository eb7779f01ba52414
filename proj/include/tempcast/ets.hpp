#pragma once

#include <cstddef>
#include <vector>

namespace tempcast {

/// Smoothing parameters for additive Holt-Winters.
struct HoltWintersParams {
    double alpha = 0.5;  // level
    double beta = 0.0;   // trend (ignored when trend_enabled is false)
    double gamma = 0.5;  // seasonal
    std::size_t period = 365;
    bool trend_enabled = false;
};

/// Smoothing state after consuming t observations. seasonals holds the last
/// `period` seasonal components in chronological order, oldest first
/// (S_{t-p+1} .. S_t).
struct HoltWintersState {
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> seasonals;
    std::size_t t = 0;
};

struct SmoothResult {
    HoltWintersState state;
    std::vector<double> fitted;  // one-step-ahead predictions, per observation
    double sse = 0.0;
};

struct HoltWintersFit {
    HoltWintersParams params;
    HoltWintersState state;  // final state after smoothing with params
    double sse = 0.0;
};

/// Textbook initialization: level = mean of the first period, trend = slope
/// between the first two period means (0 when disabled), seasonals = first
/// period's offsets from the level. Throws SeriesTooShort (< 2 periods).
HoltWintersState initialize_state(const std::vector<double>& series,
                                  const HoltWintersParams& params);

/// Run the three smoothing recursions over the series:
///   L_t = alpha (x_t - S_{t-p}) + (1-alpha)(L_{t-1} + T_{t-1})
///   T_t = beta (L_t - L_{t-1}) + (1-beta) T_{t-1}
///   S_t = gamma (x_t - L_t) + (1-gamma) S_{t-p}
/// fitted[t] = L_{t-1} + T_{t-1} + S_{t-p}; sse accumulates the one-step
/// errors. With trend disabled the T recursion is skipped and T stays 0.
SmoothResult smooth(const std::vector<double>& series, const HoltWintersParams& params,
                    const HoltWintersState& initial_state);

/// Pick alpha/gamma (and beta when the trend is on) by exhaustive grid search
/// over {0.05, 0.10, .., 0.95} minimizing one-step SSE — ties to the
/// lexicographically smallest triple — then refine with Nelder-Mead, clamping
/// parameters to (0.001, 0.999). Throws SeriesTooShort.
HoltWintersFit fit_holt_winters(const std::vector<double>& series, std::size_t period,
                                bool trend_enabled);

/// Forecast n = 1..horizon steps ahead:
///   F_{t+n} = L_t + n T_t + S_{t-p + ((n-1) mod p) + 1}
/// (the trend term is dropped when disabled).
std::vector<double> forecast_ets(const HoltWintersState& state,
                                 const HoltWintersParams& params, std::size_t horizon);

}  // namespace tempcast
