#include "tempcast/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempcast/errors.hpp"
#include "tempcast/rng.hpp"

using namespace tempcast;

namespace {

EvalReport make_report(const std::string& model, const std::string& city, Variable var,
                       double rmse_value, double mae_value) {
    EvalReport r;
    r.model_name = model;
    r.city = city;
    r.variable = var;
    r.rmse = rmse_value;
    r.mae = mae_value;
    r.n = 100;
    return r;
}

EvalReport make_failure(const std::string& model, const std::string& city, Variable var,
                        const std::string& reason) {
    EvalReport r;
    r.model_name = model;
    r.city = city;
    r.variable = var;
    r.ok = false;
    r.failure = reason;
    return r;
}

}  // namespace

TEST_CASE("rmse matches hand-computed values") {
    CHECK(rmse({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
    CHECK(rmse({1.0, 2.0, 3.0}, {2.0, 2.0, 2.0}) ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(rmse({5.0}, {2.0}) == 3.0);
}

TEST_CASE("mae matches hand-computed values") {
    CHECK(mae({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
    CHECK(mae({1.0, 2.0, 3.0}, {2.0, 2.0, 2.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(mae({5.0}, {2.0}) == 3.0);
}

TEST_CASE("metrics validate their inputs") {
    CHECK_THROWS_AS(rmse({1.0}, {1.0, 2.0}), DimensionMismatch);
    CHECK_THROWS_AS(rmse({}, {}), EmptyInput);
    const double nan = std::nan("");
    CHECK_THROWS_AS(rmse({nan}, {1.0}), NonFiniteValue);
    CHECK_THROWS_AS(rmse({1.0}, {nan}), NonFiniteValue);
    CHECK_THROWS_AS(mae({1.0, 2.0}, {1.0}), DimensionMismatch);
    CHECK_THROWS_AS(mae({}, {}), EmptyInput);
    CHECK_THROWS_AS(mae({std::numeric_limits<double>::infinity()}, {0.0}), NonFiniteValue);
}

TEST_CASE("rmse dominates mae on randomized vectors") {
    Rng rng(314);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + rng.next_below(50);
        std::vector<double> a(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.normal(50.0, 10.0);
            p[i] = rng.normal(50.0, 10.0);
        }
        CHECK(rmse(a, p) >= mae(a, p) - 1e-12);
    }
}

TEST_CASE("metrics are symmetric and translation invariant") {
    Rng rng(271);
    std::vector<double> a(40), p(40), a_shift(40), p_shift(40);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.normal(60.0, 8.0);
        p[i] = rng.normal(60.0, 8.0);
        a_shift[i] = a[i] + 17.25;
        p_shift[i] = p[i] + 17.25;
    }
    CHECK(rmse(a, p) == rmse(p, a));
    CHECK(mae(a, p) == mae(p, a));
    CHECK(rmse(a_shift, p_shift) == doctest::Approx(rmse(a, p)).epsilon(1e-12));
    CHECK(mae(a_shift, p_shift) == doctest::Approx(mae(a, p)).epsilon(1e-12));
}

TEST_CASE("evaluate_forecast fills a successful report") {
    const EvalReport r =
        evaluate_forecast("arima", "Houston", Variable::Tmax, {1.0, 2.0, 3.0}, {2.0, 2.0, 2.0});
    CHECK(r.ok);
    CHECK(r.model_name == "arima");
    CHECK(r.n == 3);
    CHECK(r.rmse == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(r.mae == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("compare_models ranks by RMSE ascending within a group") {
    const std::vector<EvalReport> reports = {
        make_report("ets", "Houston", Variable::Tmax, 11.24, 9.0),
        make_report("arima", "Houston", Variable::Tmax, 6.09, 4.8),
        make_report("mlp", "Houston", Variable::Tmax, 28.14, 25.0),
    };
    const ModelComparison c = compare_models(reports);
    REQUIRE(c.groups.size() == 1);
    REQUIRE(c.groups[0].entries.size() == 3);
    CHECK(c.groups[0].entries[0].report.model_name == "arima");
    CHECK(c.groups[0].entries[0].rank == 1);
    CHECK(c.groups[0].entries[1].report.model_name == "ets");
    CHECK(c.groups[0].entries[1].rank == 2);
    CHECK(c.groups[0].entries[2].report.model_name == "mlp");
    CHECK(c.groups[0].entries[2].rank == 3);
}

TEST_CASE("failed models are listed last with their reason") {
    const std::vector<EvalReport> reports = {
        make_failure("gp", "Houston", Variable::Tmax, "factorization failed"),
        make_report("arima", "Houston", Variable::Tmax, 6.0, 5.0),
        make_report("ets", "Houston", Variable::Tmax, 7.0, 6.0),
    };
    const ModelComparison c = compare_models(reports);
    REQUIRE(c.groups.size() == 1);
    const auto& entries = c.groups[0].entries;
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].report.model_name == "arima");
    CHECK(entries[1].report.model_name == "ets");
    CHECK(entries[2].report.model_name == "gp");
    CHECK(entries[2].rank == 0);
    CHECK(entries[2].report.failure == "factorization failed");
    // The failed model appears in the overall list, unranked and last.
    REQUIRE(c.overall.size() == 3);
    CHECK(c.overall[2].model_name == "gp");
    CHECK(c.overall[2].groups_ranked == 0);
}

TEST_CASE("equal RMSE ties break by MAE then by name") {
    const std::vector<EvalReport> reports = {
        make_report("b_model", "X", Variable::Tmin, 5.0, 4.0),
        make_report("a_model", "X", Variable::Tmin, 5.0, 4.0),
        make_report("c_model", "X", Variable::Tmin, 5.0, 3.0),
    };
    const ModelComparison c = compare_models(reports);
    const auto& entries = c.groups[0].entries;
    CHECK(entries[0].report.model_name == "c_model");  // smaller MAE wins
    CHECK(entries[1].report.model_name == "a_model");  // then name order
    CHECK(entries[2].report.model_name == "b_model");
}

TEST_CASE("comparison is deterministic under permutation of input reports") {
    std::vector<EvalReport> reports = {
        make_report("arima", "Austin", Variable::Tmax, 6.0, 5.0),
        make_report("ets", "Austin", Variable::Tmax, 7.0, 6.0),
        make_report("arima", "Dallas", Variable::Tmax, 8.0, 7.0),
        make_report("ets", "Dallas", Variable::Tmax, 6.5, 5.5),
        make_failure("gp", "Dallas", Variable::Tmax, "boom"),
    };
    const ModelComparison base = compare_models(reports);
    Rng rng(99);
    for (int rep = 0; rep < 5; ++rep) {
        rng.shuffle(reports);
        const ModelComparison c = compare_models(reports);
        REQUIRE(c.groups.size() == base.groups.size());
        for (std::size_t g = 0; g < c.groups.size(); ++g) {
            CHECK(c.groups[g].city == base.groups[g].city);
            REQUIRE(c.groups[g].entries.size() == base.groups[g].entries.size());
            for (std::size_t i = 0; i < c.groups[g].entries.size(); ++i) {
                CHECK(c.groups[g].entries[i].report.model_name ==
                      base.groups[g].entries[i].report.model_name);
                CHECK(c.groups[g].entries[i].rank == base.groups[g].entries[i].rank);
            }
        }
        REQUIRE(c.overall.size() == base.overall.size());
        for (std::size_t i = 0; i < c.overall.size(); ++i) {
            CHECK(c.overall[i].model_name == base.overall[i].model_name);
        }
    }
}

TEST_CASE("overall rank is the mean of per-group ranks") {
    const std::vector<EvalReport> reports = {
        make_report("arima", "Austin", Variable::Tmax, 6.0, 5.0),   // rank 1
        make_report("ets", "Austin", Variable::Tmax, 7.0, 6.0),     // rank 2
        make_report("arima", "Dallas", Variable::Tmax, 8.0, 7.0),   // rank 2
        make_report("ets", "Dallas", Variable::Tmax, 6.5, 5.5),     // rank 1
        make_report("mlp", "Dallas", Variable::Tmax, 9.0, 8.0),     // rank 3, one group only
    };
    const ModelComparison c = compare_models(reports);
    REQUIRE(c.overall.size() == 3);
    CHECK(c.overall[0].model_name == "arima");
    CHECK(c.overall[0].mean_rank == doctest::Approx(1.5));
    CHECK(c.overall[1].model_name == "ets");
    CHECK(c.overall[1].mean_rank == doctest::Approx(1.5));
    CHECK(c.overall[2].model_name == "mlp");
    CHECK(c.overall[2].mean_rank == doctest::Approx(3.0));
    CHECK(c.overall[2].groups_ranked == 1);
}

TEST_CASE("compare_models rejects an empty report list") {
    CHECK_THROWS_AS(compare_models({}), EmptyInput);
}

TEST_CASE("renderings carry the ranking and mark failures") {
    const std::vector<EvalReport> reports = {
        make_report("arima", "Houston", Variable::Tmax, 6.09, 4.8),
        make_failure("gp", "Houston", Variable::Tmax, "factorization failed"),
    };
    const ModelComparison c = compare_models(reports);

    const std::string table = comparison_table(c);
    CHECK(table.find("Houston / TMAX") != std::string::npos);
    CHECK(table.find("arima") != std::string::npos);
    CHECK(table.find("--") != std::string::npos);
    CHECK(table.find("factorization failed") != std::string::npos);

    const std::string csv = comparison_csv(c);
    CHECK(csv.rfind("city,variable,rank,model,rmse,mae,n,failure\n", 0) == 0);
    CHECK(csv.find("Houston,TMAX,1,arima,6.0900,4.8000,100,") != std::string::npos);
    CHECK(csv.find("Houston,TMAX,--,gp,--,--,--,factorization failed") != std::string::npos);

    const nlohmann::ordered_json doc = nlohmann::ordered_json::parse(comparison_json(c));
    REQUIRE(doc["groups"].size() == 1);
    CHECK(doc["groups"][0]["city"] == "Houston");
    CHECK(doc["groups"][0]["models"][0]["model"] == "arima");
    CHECK(doc["groups"][0]["models"][0]["rank"] == 1);
    CHECK(doc["groups"][0]["models"][1]["failure"] == "factorization failed");
    CHECK(doc["overall"][0]["model"] == "arima");
    CHECK(doc["overall"][1]["model"] == "gp");
    CHECK_FALSE(doc["overall"][1].contains("mean_rank"));
}
