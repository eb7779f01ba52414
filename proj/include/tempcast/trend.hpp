#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "tempcast/mlp.hpp"
#include "tempcast/series.hpp"

namespace tempcast {

/// OLS linear trend with the one-sided test of slope > 0 at alpha = 0.05.
struct TrendFit {
    double beta0 = 0.0;             // intercept, deg F
    double beta1 = 0.0;             // slope, deg F per year
    double se_beta1 = 0.0;          // standard error of the slope
    double t_statistic = 0.0;       // beta1 / se_beta1
    double p_value_one_sided = 0.5; // P(T > t) under the null slope = 0
    std::size_t n = 0;
    bool reject_at_5pct = false;    // p_value_one_sided < 0.05
};

/// Upper tail P(T > t) of Student's t with df degrees of freedom, evaluated
/// through the regularized incomplete beta function (continued fraction).
/// Absolute error <= 1e-10. Requires df >= 1.
double student_t_upper_tail(double t, std::size_t df);

/// OLS of values on (intercept, times) with the one-sided slope test at
/// n - 2 degrees of freedom; times are in years so the slope is deg F per
/// year. A constant-value input reports slope 0, t = 0, p = 0.5. Throws
/// SeriesTooShort (< 3 points), DimensionMismatch, and ZeroVariance when all
/// times coincide.
TrendFit fit_trend_xy(const std::vector<double>& times_years,
                      const std::vector<double>& values);

/// fit_trend_xy on the daily time axis day_index / 365.25.
TrendFit fit_trend(const std::vector<double>& daily_values);
TrendFit fit_trend(const TimeSeries& series);

/// Regression annotation in the figures' style, e.g. "y = 57.1234 + 0.0250*t".
std::string trend_equation(const TrendFit& fit);

struct ProjectionPoint {
    std::chrono::year_month_day date;
    double value = 0.0;
    bool forecast = false;
};

struct ProjectionResult {
    std::vector<ProjectionPoint> points;  // observed then forecast, daily
    TrendFit trend;                       // fit over the combined series
};

/// Extend the observed series with horizon_days recursive daily forecasts
/// from a trained network, then fit the trend over the combined sequence.
/// Throws InvalidHyperparameter (horizon_days = 0), SeriesTooShort (observed
/// shorter than the network's input window), and whatever the forecasting or
/// trend fit propagates.
ProjectionResult project_days(const TimeSeries& series, const MlpParams& params,
                              const Standardizer& standardizer, std::size_t horizon_days);

/// project_days with horizon_years * 365 forecast steps.
ProjectionResult project_and_test(const TimeSeries& series, const MlpParams& params,
                                  const Standardizer& standardizer,
                                  std::size_t horizon_years);

/// Plot-ready CSV: header date,value,kind with kind in {observed, forecast}.
std::string projection_csv(const ProjectionResult& result);

}  // namespace tempcast
