#include "tempcast/series.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "tempcast/errors.hpp"
#include "tempcast/rng.hpp"

using namespace tempcast;
using namespace std::chrono;

namespace {

std::vector<ObservationRecord> parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_cdo_stream(in);
}

ObservationRecord rec(const char* date, std::optional<double> tmax,
                      std::optional<double> tmin = std::nullopt) {
    ObservationRecord r;
    r.station_id = "TEST0001";
    r.date = *parse_date(date);
    r.tmax = tmax;
    r.tmin = tmin;
    return r;
}

}  // namespace

TEST_CASE("date parsing accepts ISO dates and rejects everything else") {
    auto d = parse_date("2022-12-31");
    REQUIRE(d.has_value());
    CHECK(format_date(*d) == "2022-12-31");
    CHECK(parse_date("2024-02-29").has_value());   // leap day
    CHECK(!parse_date("2023-02-29").has_value());  // not a leap year
    CHECK(!parse_date("2022-13-01").has_value());
    CHECK(!parse_date("2022-00-10").has_value());
    CHECK(!parse_date("12/31/2022").has_value());
    CHECK(!parse_date("2022-1-1").has_value());
    CHECK(!parse_date("").has_value());
}

TEST_CASE("parser maps a plain CDO row to a record") {
    auto records = parse_text(
        "STATION,NAME,DATE,TMAX,TMIN\n"
        "USW00012960,\"HOUSTON INTERCONTINENTAL AIRPORT, TX US\",2022-12-31,66,47\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].station_id == "USW00012960");
    CHECK(records[0].station_name == "HOUSTON INTERCONTINENTAL AIRPORT, TX US");
    CHECK(format_date(records[0].date) == "2022-12-31");
    REQUIRE(records[0].tmax.has_value());
    CHECK(*records[0].tmax == doctest::Approx(66.0));
    REQUIRE(records[0].tmin.has_value());
    CHECK(*records[0].tmin == doctest::Approx(47.0));
}

TEST_CASE("empty temperature cells become absent values") {
    auto records = parse_text(
        "STATION,NAME,DATE,TMAX,TMIN\n"
        "X,Y,2020-01-01,,41\n"
        "X,Y,2020-01-02,55.5,\n");
    REQUIRE(records.size() == 2);
    CHECK(!records[0].tmax.has_value());
    CHECK(records[0].tmin.has_value());
    CHECK(records[1].tmax.has_value());
    CHECK(*records[1].tmax == doctest::Approx(55.5));
    CHECK(!records[1].tmin.has_value());
}

TEST_CASE("missing header columns are reported by name") {
    try {
        parse_text("STATION,NAME,DATE,TMAX\nX,Y,2020-01-01,50\n");
        FAIL("expected MissingColumn");
    } catch (const MissingColumn& e) {
        CHECK(e.column == "TMIN");
    }
    CHECK_THROWS_AS(parse_text("STATION,TMAX,TMIN\n"), MissingColumn);
}

TEST_CASE("an empty file is rejected") {
    CHECK_THROWS_AS(parse_text(""), EmptyFile);
}

TEST_CASE("unparseable rows carry their line number") {
    try {
        parse_text(
            "DATE,TMAX,TMIN\n"
            "2020-01-01,50,40\n"
            "not-a-date,51,41\n");
        FAIL("expected MalformedRow");
    } catch (const MalformedRow& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("non-numeric and physically implausible temperatures are rejected") {
    CHECK_THROWS_AS(parse_text("DATE,TMAX,TMIN\n2020-01-01,warm,40\n"), MalformedRow);
    CHECK_THROWS_AS(parse_text("DATE,TMAX,TMIN\n2020-01-01,500,40\n"), MalformedRow);
    CHECK_THROWS_AS(parse_text("DATE,TMAX,TMIN\n2020-01-01,50,-200\n"), MalformedRow);
}

TEST_CASE("unknown columns are ignored and header order is free") {
    auto records = parse_text(
        "NAME,PRCP,TMIN,DATE,SNOW,TMAX,STATION\n"
        "Somewhere,0.1,40,2020-06-01,0,75,ST1\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].station_id == "ST1");
    CHECK(*records[0].tmax == doctest::Approx(75.0));
    CHECK(*records[0].tmin == doctest::Approx(40.0));
}

TEST_CASE("build_series interpolates a one-day gap linearly") {
    std::vector<ObservationRecord> records = {rec("2020-01-01", 50.0), rec("2020-01-03", 54.0)};
    auto series = build_series(records, Variable::Tmax, FillPolicy::LinearInterpolate);
    REQUIRE(series.values.size() == 3);
    CHECK(series.values[0] == doctest::Approx(50.0));
    CHECK(series.values[1] == doctest::Approx(52.0));
    CHECK(series.values[2] == doctest::Approx(54.0));
    CHECK(series.filled_days == 1);
    CHECK(format_date(series.start_date) == "2020-01-01");
}

TEST_CASE("build_series carries values forward under ForwardFill") {
    std::vector<ObservationRecord> records = {rec("2020-01-01", 50.0), rec("2020-01-03", 54.0)};
    auto series = build_series(records, Variable::Tmax, FillPolicy::ForwardFill);
    REQUIRE(series.values.size() == 3);
    CHECK(series.values[1] == doctest::Approx(50.0));
}

TEST_CASE("Fail policy rejects sparse spans and accepts dense ones") {
    // 1 missing of 3 days is 33% — over the 5% cap.
    std::vector<ObservationRecord> sparse = {rec("2020-01-01", 50.0), rec("2020-01-03", 54.0)};
    CHECK_THROWS_AS(build_series(sparse, Variable::Tmax, FillPolicy::Fail), TooSparse);

    // 1 missing of 21 days is ~4.8% — under the cap; the gap is interpolated.
    std::vector<ObservationRecord> dense;
    for (int i = 0; i < 21; ++i) {
        if (i == 10) continue;
        auto date = year_month_day(sys_days(2020y / 1 / 1) + days(i));
        dense.push_back(rec(format_date(date).c_str(), 60.0 + i));
    }
    auto series = build_series(dense, Variable::Tmax, FillPolicy::Fail);
    CHECK(series.values.size() == 21);
    CHECK(series.values[10] == doctest::Approx(70.0));
    CHECK(series.filled_days == 1);
}

TEST_CASE("build_series spans first to last usable date only") {
    // TMAX is absent on the edge days, so they must not be part of the span.
    std::vector<ObservationRecord> records = {
        rec("2020-01-01", std::nullopt, 30.0), rec("2020-01-02", 50.0),
        rec("2020-01-03", 51.0), rec("2020-01-04", std::nullopt, 33.0)};
    auto series = build_series(records, Variable::Tmax, FillPolicy::LinearInterpolate);
    CHECK(format_date(series.start_date) == "2020-01-02");
    CHECK(series.values.size() == 2);
    CHECK(series.filled_days == 0);
}

TEST_CASE("build_series sorts by date and lets the last duplicate win") {
    std::vector<ObservationRecord> records = {rec("2020-01-03", 54.0), rec("2020-01-01", 50.0),
                                              rec("2020-01-01", 49.0), rec("2020-01-02", 52.0)};
    auto series = build_series(records, Variable::Tmax, FillPolicy::Fail);
    CHECK(series.values[0] == doctest::Approx(49.0));
    CHECK(series.values[1] == doctest::Approx(52.0));
}

TEST_CASE("build_series needs two usable observations") {
    std::vector<ObservationRecord> none;
    CHECK_THROWS_AS(build_series(none, Variable::Tmax, FillPolicy::Fail), AllMissing);
    std::vector<ObservationRecord> only_tmin = {rec("2020-01-01", std::nullopt, 30.0),
                                                rec("2020-01-02", std::nullopt, 31.0)};
    CHECK_THROWS_AS(build_series(only_tmin, Variable::Tmax, FillPolicy::Fail), AllMissing);
    std::vector<ObservationRecord> one = {rec("2020-01-01", 50.0)};
    CHECK_THROWS_AS(build_series(one, Variable::Tmax, FillPolicy::Fail), AllMissing);
}

TEST_CASE("gap filling never alters observed values") {
    Rng rng(11);
    std::vector<ObservationRecord> records;
    std::vector<std::pair<std::size_t, double>> kept;
    for (int i = 0; i < 200; ++i) {
        bool drop = (i % 23 == 7) || (i % 31 == 12);
        if (drop && i != 0 && i != 199) continue;
        auto date = year_month_day(sys_days(2019y / 6 / 1) + days(i));
        double v = rng.normal(70.0, 8.0);
        records.push_back(rec(format_date(date).c_str(), v));
        kept.emplace_back(static_cast<std::size_t>(i), v);
    }
    for (FillPolicy policy : {FillPolicy::ForwardFill, FillPolicy::LinearInterpolate}) {
        auto series = build_series(records, Variable::Tmax, policy);
        REQUIRE(series.values.size() == 200);
        for (auto [idx, v] : kept) CHECK(series.values[idx] == doctest::Approx(v));
    }
}

TEST_CASE("slice_recent_years keeps the final N calendar years") {
    TimeSeries series;
    series.variable = Variable::Tmax;
    series.start_date = 1950y / 1 / 1;
    auto total = (sys_days(2022y / 12 / 31) - sys_days(1950y / 1 / 1)).count() + 1;
    series.values.assign(static_cast<std::size_t>(total), 70.0);

    auto sliced = slice_recent_years(series, 20);
    CHECK(format_date(sliced.start_date) == "2003-01-01");
    CHECK(format_date(sliced.end_date()) == "2022-12-31");
    CHECK(sliced.values.size() == 7305);
}

TEST_CASE("slice_recent_years of an exact-span series is the identity") {
    TimeSeries series;
    series.start_date = 2003y / 1 / 1;
    series.values.assign(7305, 1.0);  // through 2022-12-31
    auto sliced = slice_recent_years(series, 20);
    CHECK(sliced.values.size() == series.values.size());
    CHECK(sliced.start_date == series.start_date);
}

TEST_CASE("slice_recent_years rejects short spans") {
    TimeSeries series;
    series.start_date = 2020y / 1 / 1;
    series.values.assign(365 * 5, 1.0);
    CHECK_THROWS_AS(slice_recent_years(series, 20), SpanTooShort);
}

TEST_CASE("train_test_split uses floor for the train length") {
    TimeSeries series;
    series.start_date = 2003y / 1 / 1;
    series.values.resize(7305);
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        series.values[i] = static_cast<double>(i);
    }
    auto split = train_test_split(series, 0.8);
    CHECK(split.train.values.size() == 5844);
    CHECK(split.test.values.size() == 1461);

    // Contiguity: test begins exactly one day after train ends.
    auto gap = sys_days(split.test.start_date) - sys_days(split.train.end_date());
    CHECK(gap.count() == 1);

    // Concatenation reproduces the input exactly.
    std::vector<double> joined = split.train.values;
    joined.insert(joined.end(), split.test.values.begin(), split.test.values.end());
    CHECK(joined == series.values);
}

TEST_CASE("train_test_split handles the length-10 example") {
    TimeSeries series;
    series.start_date = 2020y / 1 / 1;
    series.values.assign(10, 2.0);
    auto split = train_test_split(series, 0.8);
    CHECK(split.train.values.size() == 8);
    CHECK(split.test.values.size() == 2);
}

TEST_CASE("degenerate splits are rejected") {
    TimeSeries series;
    series.start_date = 2020y / 1 / 1;
    series.values.assign(20, 2.0);
    CHECK_THROWS_AS(train_test_split(series, 1.0), DegenerateSplit);
    CHECK_THROWS_AS(train_test_split(series, 0.0), DegenerateSplit);
    CHECK_THROWS_AS(train_test_split(series, 0.01), DegenerateSplit);  // floor -> 0
    TimeSeries tiny;
    tiny.start_date = 2020y / 1 / 1;
    tiny.values.assign(9, 1.0);
    CHECK_THROWS_AS(train_test_split(tiny, 0.8), SeriesTooShort);
}

TEST_CASE("standardizer fits sample statistics with the n-1 denominator") {
    auto s = fit_standardizer(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.std == doctest::Approx(1.0));
}

TEST_CASE("standardizer rejects constant and too-short inputs") {
    CHECK_THROWS_AS(fit_standardizer(std::vector<double>{5.0, 5.0, 5.0}), ZeroVariance);
    CHECK_THROWS_AS(fit_standardizer(std::vector<double>{5.0}), SeriesTooShort);
}

TEST_CASE("standardizer round-trips within 1e-12") {
    std::vector<double> xs = {10.0, 20.0, 30.0};
    auto s = fit_standardizer(xs);
    auto back = s.invert(s.apply(xs));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::fabs(back[i] - xs[i]) <= 1e-12 * std::fabs(xs[i]));
    }
}

TEST_CASE("standardized data has mean 0 and sample std 1") {
    Rng rng(3);
    std::vector<double> xs(500);
    for (auto& v : xs) v = rng.normal(60.0, 12.0);
    auto s = fit_standardizer(xs);
    auto zs = s.apply(xs);
    double mean = 0.0;
    for (double z : zs) mean += z;
    mean /= static_cast<double>(zs.size());
    double ss = 0.0;
    for (double z : zs) ss += (z - mean) * (z - mean);
    double std_dev = std::sqrt(ss / static_cast<double>(zs.size() - 1));
    CHECK(std::fabs(mean) <= 1e-10);
    CHECK(std::fabs(std_dev - 1.0) <= 1e-10);
}

TEST_CASE("sliding_windows enumerates all window/target pairs") {
    auto samples = sliding_windows(std::vector<double>{1, 2, 3, 4, 5}, 3);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].input == std::vector<double>{1, 2, 3});
    CHECK(samples[0].target == doctest::Approx(4.0));
    CHECK(samples[1].input == std::vector<double>{2, 3, 4});
    CHECK(samples[1].target == doctest::Approx(5.0));
}

TEST_CASE("sliding_windows boundary and count behavior") {
    CHECK_THROWS_AS(sliding_windows(std::vector<double>{1, 2, 3}, 3), SeriesTooShort);
    std::vector<double> hundred(100, 1.0);
    CHECK(sliding_windows(hundred, 3).size() == 97);
    for (std::size_t n = 4; n < 24; ++n) {
        std::vector<double> v(n, 0.0);
        CHECK(sliding_windows(v, 3).size() == n - 3);
    }
}
