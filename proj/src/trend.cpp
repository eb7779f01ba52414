#include "tempcast/trend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tempcast/errors.hpp"
#include "tempcast/linalg.hpp"

namespace tempcast {

namespace {

/// Continued-fraction kernel for the regularized incomplete beta function
/// (modified Lentz evaluation of the even/odd coefficient recurrence).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iterations = 300;
    constexpr double eps = 1e-15;
    constexpr double floor = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < floor) d = floor;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iterations; ++m) {
        const double m2 = 2.0 * m;
        double coeff = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + coeff * d;
        if (std::abs(d) < floor) d = floor;
        c = 1.0 + coeff / c;
        if (std::abs(c) < floor) c = floor;
        d = 1.0 / d;
        h *= d * c;
        coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + coeff * d;
        if (std::abs(d) < floor) d = floor;
        c = 1.0 + coeff / c;
        if (std::abs(c) < floor) c = floor;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) break;
    }
    return h;
}

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_upper_tail(double t, std::size_t df) {
    const double nu = static_cast<double>(df);
    const double x = nu / (nu + t * t);
    const double half_tail = 0.5 * regularized_incomplete_beta(nu / 2.0, 0.5, x);
    return t >= 0.0 ? half_tail : 1.0 - half_tail;
}

TrendFit fit_trend_xy(const std::vector<double>& times_years,
                      const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (times_years.size() != n) {
        throw DimensionMismatch("time and value vectors differ in length");
    }
    if (n < 3) throw SeriesTooShort("trend fit needs at least 3 observations");
    {
        const auto [tmin, tmax] = std::minmax_element(times_years.begin(), times_years.end());
        if (*tmin == *tmax) throw ZeroVariance("time axis is constant");
    }

    TrendFit fit;
    fit.n = n;

    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    if (*min_it == *max_it) {
        // Constant series: slope exactly 0, the null is dead-center.
        fit.beta0 = *min_it;
        return fit;
    }

    Matrix design(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = times_years[i];
    }
    const OlsResult ols_fit = ols(design, values);
    fit.beta0 = ols_fit.coefficients[0];
    fit.beta1 = ols_fit.coefficients[1];
    fit.se_beta1 = ols_fit.standard_errors[1];
    if (fit.se_beta1 > 0.0) {
        fit.t_statistic = fit.beta1 / fit.se_beta1;
        fit.p_value_one_sided = student_t_upper_tail(fit.t_statistic, n - 2);
    } else {
        // Exact fit: the slope sign decides the tail outright.
        if (fit.beta1 > 0.0) {
            fit.t_statistic = std::numeric_limits<double>::infinity();
            fit.p_value_one_sided = 0.0;
        } else if (fit.beta1 < 0.0) {
            fit.t_statistic = -std::numeric_limits<double>::infinity();
            fit.p_value_one_sided = 1.0;
        }
    }
    fit.reject_at_5pct = fit.p_value_one_sided < 0.05;
    return fit;
}

TrendFit fit_trend(const std::vector<double>& daily_values) {
    std::vector<double> times(daily_values.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        times[i] = static_cast<double>(i) / 365.25;
    }
    return fit_trend_xy(times, daily_values);
}

TrendFit fit_trend(const TimeSeries& series) { return fit_trend(series.values); }

std::string trend_equation(const TrendFit& fit) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "y = %.4f %c %.4f*t", fit.beta0,
                  fit.beta1 < 0.0 ? '-' : '+', std::abs(fit.beta1));
    return buf;
}

ProjectionResult project_days(const TimeSeries& series, const MlpParams& params,
                              const Standardizer& standardizer, std::size_t horizon_days) {
    if (horizon_days < 1) throw InvalidHyperparameter("projection horizon must be >= 1 day");
    const std::size_t input_size = params.w1.cols;
    if (series.size() < input_size) {
        throw SeriesTooShort("observed series shorter than the network input window");
    }

    const std::vector<double> recent(series.values.end() - static_cast<long>(input_size),
                                     series.values.end());
    const std::vector<double> forecasts = forecast_mlp(params, standardizer, recent, horizon_days);

    std::vector<double> combined = series.values;
    combined.insert(combined.end(), forecasts.begin(), forecasts.end());

    ProjectionResult result;
    result.points.reserve(combined.size());
    using std::chrono::sys_days;
    const sys_days start{series.start_date};
    for (std::size_t i = 0; i < combined.size(); ++i) {
        ProjectionPoint point;
        point.date = std::chrono::year_month_day(start + std::chrono::days(static_cast<long>(i)));
        point.value = combined[i];
        point.forecast = i >= series.size();
        result.points.push_back(point);
    }
    result.trend = fit_trend(combined);
    return result;
}

ProjectionResult project_and_test(const TimeSeries& series, const MlpParams& params,
                                  const Standardizer& standardizer,
                                  std::size_t horizon_years) {
    if (horizon_years < 1) throw InvalidHyperparameter("projection horizon must be >= 1 year");
    return project_days(series, params, standardizer, horizon_years * 365);
}

std::string projection_csv(const ProjectionResult& result) {
    std::ostringstream out;
    out << "date,value,kind\n";
    char line[96];
    for (const ProjectionPoint& point : result.points) {
        std::snprintf(line, sizeof(line), "%s,%.4f,%s\n", format_date(point.date).c_str(),
                      point.value, point.forecast ? "forecast" : "observed");
        out << line;
    }
    return out.str();
}

}  // namespace tempcast
