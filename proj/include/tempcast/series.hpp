#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tempcast {

enum class Variable { Tmax, Tmin };

/// Canonical column name ("TMAX" / "TMIN").
const char* variable_name(Variable variable);

/// Parse a variable name, case-insensitively. Empty optional when unknown.
std::optional<Variable> parse_variable(std::string_view text);

/// Parse a strict ISO-8601 calendar date (YYYY-MM-DD).
std::optional<std::chrono::year_month_day> parse_date(std::string_view text);

/// Format a date as YYYY-MM-DD.
std::string format_date(std::chrono::year_month_day date);

/// One row of a NOAA CDO daily-summaries export.
struct ObservationRecord {
    std::string station_id;
    std::string station_name;
    std::chrono::year_month_day date;
    std::optional<double> tmax;  // °F
    std::optional<double> tmin;  // °F
};

/// Gap-free daily series; index i is the observation at start_date + i days.
struct TimeSeries {
    std::string station_id;
    Variable variable = Variable::Tmax;
    std::chrono::year_month_day start_date;
    std::vector<double> values;
    std::size_t filled_days = 0;  // how many entries were synthesized at build time

    std::size_t size() const { return values.size(); }

    std::chrono::year_month_day date_at(std::size_t i) const {
        using namespace std::chrono;
        return year_month_day(sys_days(start_date) + days(static_cast<long>(i)));
    }

    std::chrono::year_month_day end_date() const {
        return date_at(values.empty() ? 0 : values.size() - 1);
    }
};

/// Chronologically contiguous train/test partition.
struct DatasetSplit {
    TimeSeries train;
    TimeSeries test;
};

/// How build_series treats days with no observation.
enum class FillPolicy {
    ForwardFill,        // carry the previous observation forward
    LinearInterpolate,  // straight line between the flanking observations
    Fail,               // reject sparse data, interpolate below the cap
};

std::optional<FillPolicy> parse_fill_policy(std::string_view text);
const char* fill_policy_name(FillPolicy policy);

/// Read a CDO daily-summaries CSV. Requires header columns DATE, TMAX, TMIN
/// (STATION and NAME are optional); other columns are ignored. Quoted fields
/// with embedded commas are handled. Empty temperature cells become absent
/// values. Throws EmptyFile, MissingColumn, MalformedRow.
std::vector<ObservationRecord> parse_cdo_csv(const std::string& path);

/// Same parser over an already-open stream (used by tests).
std::vector<ObservationRecord> parse_cdo_stream(std::istream& input);

/// Assemble a gap-free daily series for one variable. Records are sorted by
/// date internally; for duplicate dates the last record wins. The series runs
/// from the first to the last date where the variable is present, so it never
/// begins or ends with a filled value. Under FillPolicy::Fail, throws
/// TooSparse when more than 5% of the days in that span are missing;
/// otherwise gaps are filled per policy. Throws AllMissing when fewer than
/// two usable observations exist.
TimeSeries build_series(const std::vector<ObservationRecord>& records, Variable variable,
                        FillPolicy fill);

/// Fraction of days in the series span that had to be filled.
double gap_ratio(const TimeSeries& series);

/// Keep the window that ends at the series' final date and starts `years`
/// calendar years back (the day after the same calendar date `years` earlier,
/// so e.g. 20 years ending 2022-12-31 starts 2003-01-01). Throws SpanTooShort.
TimeSeries slice_recent_years(const TimeSeries& series, int years);

/// Chronological split with |train| = floor(train_fraction * |series|).
/// Throws DegenerateSplit when either side would be empty (fractions outside
/// (0,1) included) and SeriesTooShort when |series| < 10.
DatasetSplit train_test_split(const TimeSeries& series, double train_fraction);

/// Affine map x -> (x - mean) / std and its inverse.
struct Standardizer {
    double mean = 0.0;
    double std = 1.0;  // sample standard deviation, n-1 denominator

    double apply(double x) const { return (x - mean) / std; }
    double invert(double z) const { return z * std + mean; }

    std::vector<double> apply(const std::vector<double>& xs) const;
    std::vector<double> invert(const std::vector<double>& zs) const;
};

/// Fit mean/std (n-1 denominator). Throws SeriesTooShort for fewer than two
/// values and ZeroVariance when the sample std is not strictly positive.
Standardizer fit_standardizer(const std::vector<double>& values);
Standardizer fit_standardizer(const TimeSeries& series);

/// One supervised example: `window` consecutive values and the next one.
struct WindowSample {
    std::vector<double> input;
    double target = 0.0;
};

/// All |values| - window consecutive (input, target) pairs.
/// Throws SeriesTooShort when |values| <= window or window = 0.
std::vector<WindowSample> sliding_windows(const std::vector<double>& values, std::size_t window);
std::vector<WindowSample> sliding_windows(const TimeSeries& series, std::size_t window);

}  // namespace tempcast
