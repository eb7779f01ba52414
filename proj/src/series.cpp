#include "tempcast/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tempcast/errors.hpp"

namespace tempcast {

namespace {

constexpr double kMinPlausibleF = -120.0;
constexpr double kMaxPlausibleF = 150.0;
constexpr double kSparsityCap = 0.05;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

/// Split one CSV line into fields, honoring double-quoted fields with
/// embedded commas and "" escapes.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else if (ch != '\r') {
            current.push_back(ch);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
    return value;
}

int parse_fixed_int(std::string_view s) {
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return -1;
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

const char* variable_name(Variable variable) {
    return variable == Variable::Tmax ? "TMAX" : "TMIN";
}

std::optional<Variable> parse_variable(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "TMAX") return Variable::Tmax;
    if (upper == "TMIN") return Variable::Tmin;
    return std::nullopt;
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view text) {
    using namespace std::chrono;
    text = trim(text);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = parse_fixed_int(text.substr(0, 4));
    int m = parse_fixed_int(text.substr(5, 2));
    int d = parse_fixed_int(text.substr(8, 2));
    if (y < 0 || m < 0 || d < 0) return std::nullopt;
    year_month_day ymd{year(y), month(static_cast<unsigned>(m)),
                       day(static_cast<unsigned>(d))};
    if (!ymd.ok()) return std::nullopt;
    return ymd;
}

std::string format_date(std::chrono::year_month_day date) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

std::optional<FillPolicy> parse_fill_policy(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "forward" || lower == "forward-fill") return FillPolicy::ForwardFill;
    if (lower == "linear" || lower == "linear-interpolate") return FillPolicy::LinearInterpolate;
    if (lower == "fail") return FillPolicy::Fail;
    return std::nullopt;
}

const char* fill_policy_name(FillPolicy policy) {
    switch (policy) {
        case FillPolicy::ForwardFill:
            return "forward";
        case FillPolicy::LinearInterpolate:
            return "linear";
        case FillPolicy::Fail:
        default:
            return "fail";
    }
}

std::vector<ObservationRecord> parse_cdo_stream(std::istream& input) {
    std::string line;
    if (!std::getline(input, line)) throw EmptyFile("CSV has no header row");

    auto header = split_csv_line(line);
    auto find_column = [&](std::string_view name) -> long {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (trim(header[i]) == name) return static_cast<long>(i);
        }
        return -1;
    };
    const long col_date = find_column("DATE");
    const long col_tmax = find_column("TMAX");
    const long col_tmin = find_column("TMIN");
    const long col_station = find_column("STATION");
    const long col_name = find_column("NAME");
    if (col_date < 0) throw MissingColumn("DATE");
    if (col_tmax < 0) throw MissingColumn("TMAX");
    if (col_tmin < 0) throw MissingColumn("TMIN");

    const long needed = std::max({col_date, col_tmax, col_tmin});
    std::vector<ObservationRecord> records;
    std::size_t line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (static_cast<long>(fields.size()) <= needed) {
            throw MalformedRow(line_no, "too few fields");
        }
        ObservationRecord rec;
        if (col_station >= 0 && col_station < static_cast<long>(fields.size())) {
            rec.station_id = trim(fields[static_cast<std::size_t>(col_station)]);
        }
        if (col_name >= 0 && col_name < static_cast<long>(fields.size())) {
            rec.station_name = trim(fields[static_cast<std::size_t>(col_name)]);
        }
        auto date = parse_date(fields[static_cast<std::size_t>(col_date)]);
        if (!date) throw MalformedRow(line_no, "unparseable DATE");
        rec.date = *date;

        auto read_temp = [&](long col, const char* what) -> std::optional<double> {
            std::string_view cell = fields[static_cast<std::size_t>(col)];
            if (trim(cell).empty()) return std::nullopt;
            auto value = parse_number(cell);
            if (!value) {
                throw MalformedRow(line_no, std::string("unparseable ") + what);
            }
            if (*value < kMinPlausibleF || *value > kMaxPlausibleF) {
                throw MalformedRow(line_no, std::string(what) + " outside plausible range");
            }
            return value;
        };
        rec.tmax = read_temp(col_tmax, "TMAX");
        rec.tmin = read_temp(col_tmin, "TMIN");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ObservationRecord> parse_cdo_csv(const std::string& path) {
    std::ifstream input(path);
    if (!input) throw EmptyFile("cannot open file: " + path);
    return parse_cdo_stream(input);
}

TimeSeries build_series(const std::vector<ObservationRecord>& records, Variable variable,
                        FillPolicy fill) {
    using namespace std::chrono;
    // Last record wins on duplicate dates; the map orders by date for us.
    std::map<sys_days, double> observed;
    std::string station_id;
    for (const auto& rec : records) {
        const auto& value = (variable == Variable::Tmax) ? rec.tmax : rec.tmin;
        if (!value) continue;
        observed[sys_days(rec.date)] = *value;
        if (station_id.empty()) station_id = rec.station_id;
    }
    if (observed.size() < 2) {
        throw AllMissing(std::string("fewer than two usable ") + variable_name(variable) +
                         " observations");
    }

    const sys_days first = observed.begin()->first;
    const sys_days last = observed.rbegin()->first;
    const auto total_days = static_cast<std::size_t>((last - first).count()) + 1;
    const std::size_t missing = total_days - observed.size();

    if (fill == FillPolicy::Fail &&
        static_cast<double>(missing) > kSparsityCap * static_cast<double>(total_days)) {
        std::ostringstream msg;
        msg << missing << " of " << total_days << " days missing (cap "
            << (kSparsityCap * 100.0) << "%)";
        throw TooSparse(msg.str());
    }

    TimeSeries series;
    series.station_id = station_id;
    series.variable = variable;
    series.start_date = year_month_day(first);
    series.values.resize(total_days);
    series.filled_days = missing;

    auto it = observed.begin();
    auto next = std::next(it);
    for (std::size_t i = 0; i < total_days; ++i) {
        const sys_days today = first + days(static_cast<long>(i));
        while (next != observed.end() && next->first <= today) {
            it = next;
            ++next;
        }
        if (it->first == today) {
            series.values[i] = it->second;
            continue;
        }
        // Gap day strictly between it (before) and next (after).
        if (fill == FillPolicy::ForwardFill) {
            series.values[i] = it->second;
        } else {  // LinearInterpolate, and Fail below the sparsity cap
            const double span = static_cast<double>((next->first - it->first).count());
            const double offset = static_cast<double>((today - it->first).count());
            series.values[i] = it->second + (next->second - it->second) * (offset / span);
        }
    }
    return series;
}

double gap_ratio(const TimeSeries& series) {
    if (series.values.empty()) return 0.0;
    return static_cast<double>(series.filled_days) / static_cast<double>(series.values.size());
}

TimeSeries slice_recent_years(const TimeSeries& series, int years) {
    using namespace std::chrono;
    if (years <= 0) throw SpanTooShort("years must be positive");
    const year_month_day end = series.end_date();
    year_month_day anchor{end.year() - std::chrono::years(years), end.month(), end.day()};
    if (!anchor.ok()) {
        // Feb 29 minus a non-leap span: clamp to the end of the month.
        anchor = anchor.year() / anchor.month() / last;
    }
    const sys_days start_day = sys_days(anchor) + days(1);
    const sys_days first = sys_days(series.start_date);
    if (start_day < first) {
        throw SpanTooShort("series spans fewer than the requested years");
    }
    const auto offset = static_cast<std::size_t>((start_day - first).count());
    TimeSeries out;
    out.station_id = series.station_id;
    out.variable = series.variable;
    out.start_date = year_month_day(start_day);
    out.values.assign(series.values.begin() + static_cast<long>(offset), series.values.end());
    out.filled_days = 0;  // fill bookkeeping refers to the original build
    return out;
}

DatasetSplit train_test_split(const TimeSeries& series, double train_fraction) {
    const std::size_t n = series.size();
    if (n < 10) throw SeriesTooShort("need at least 10 observations to split");
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
        throw DegenerateSplit("train fraction must lie strictly between 0 and 1");
    }
    const auto n_train =
        static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train == n) {
        throw DegenerateSplit("split leaves one side empty");
    }
    DatasetSplit split;
    split.train.station_id = split.test.station_id = series.station_id;
    split.train.variable = split.test.variable = series.variable;
    split.train.start_date = series.start_date;
    split.train.values.assign(series.values.begin(),
                              series.values.begin() + static_cast<long>(n_train));
    split.test.start_date = series.date_at(n_train);
    split.test.values.assign(series.values.begin() + static_cast<long>(n_train),
                             series.values.end());
    return split;
}

std::vector<double> Standardizer::apply(const std::vector<double>& xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = apply(xs[i]);
    return out;
}

std::vector<double> Standardizer::invert(const std::vector<double>& zs) const {
    std::vector<double> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) out[i] = invert(zs[i]);
    return out;
}

Standardizer fit_standardizer(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) throw SeriesTooShort("standardizer needs at least two values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double std_dev = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(std_dev > 0.0)) throw ZeroVariance("sample standard deviation is zero");
    return Standardizer{mean, std_dev};
}

Standardizer fit_standardizer(const TimeSeries& series) {
    return fit_standardizer(series.values);
}

std::vector<WindowSample> sliding_windows(const std::vector<double>& values,
                                          std::size_t window) {
    if (window == 0) throw SeriesTooShort("window must be positive");
    if (values.size() <= window) {
        throw SeriesTooShort("series too short for the requested window");
    }
    std::vector<WindowSample> samples(values.size() - window);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i].input.assign(values.begin() + static_cast<long>(i),
                                values.begin() + static_cast<long>(i + window));
        samples[i].target = values[i + window];
    }
    return samples;
}

std::vector<WindowSample> sliding_windows(const TimeSeries& series, std::size_t window) {
    return sliding_windows(series.values, window);
}

}  // namespace tempcast
