#include "tempcast/ets.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

#include "tempcast/errors.hpp"
#include "tempcast/rng.hpp"

using namespace tempcast;

namespace {

HoltWintersParams make_params(double a, double b, double g, std::size_t period,
                              bool trend) {
    HoltWintersParams p;
    p.alpha = a;
    p.beta = b;
    p.gamma = g;
    p.period = period;
    p.trend_enabled = trend;
    return p;
}

}  // namespace

TEST_CASE("initialization of a constant series is the trivial state") {
    std::vector<double> x(12, 3.25);
    auto state = initialize_state(x, make_params(0.3, 0.2, 0.4, 4, true));
    CHECK(state.level == doctest::Approx(3.25));
    CHECK(state.trend == doctest::Approx(0.0));
    for (double s : state.seasonals) CHECK(s == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("initialization matches the hand-worked ramp example") {
    std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8};
    auto state = initialize_state(x, make_params(0.3, 0.2, 0.4, 4, true));
    CHECK(state.level == doctest::Approx(2.5));
    CHECK(state.trend == doctest::Approx(1.0));
    REQUIRE(state.seasonals.size() == 4);
    CHECK(state.seasonals[0] == doctest::Approx(-1.5));
    CHECK(state.seasonals[1] == doctest::Approx(-0.5));
    CHECK(state.seasonals[2] == doctest::Approx(0.5));
    CHECK(state.seasonals[3] == doctest::Approx(1.5));
}

TEST_CASE("initialization trend is zero when the trend is disabled") {
    std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8};
    auto state = initialize_state(x, make_params(0.3, 0.2, 0.4, 4, false));
    CHECK(state.trend == 0.0);
}

TEST_CASE("initialization rejects series shorter than two periods") {
    std::vector<double> x = {1, 2, 3, 4, 5};
    CHECK_THROWS_AS(initialize_state(x, make_params(0.3, 0.2, 0.4, 4, true)),
                    SeriesTooShort);
}

TEST_CASE("smoothing reproduces the two-step hand recursion") {
    HoltWintersState init;
    init.level = 1.0;
    init.trend = 0.0;
    init.seasonals = {0.0, 0.0};
    auto params = make_params(0.5, 0.5, 0.5, 2, true);
    auto result = smooth({2.0, 3.0}, params, init);

    CHECK(result.state.level == doctest::Approx(2.375).epsilon(1e-12));
    CHECK(result.state.trend == doctest::Approx(0.5625).epsilon(1e-12));
    // Chronological seasonals: S_1 then S_2.
    CHECK(result.state.seasonals[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(result.state.seasonals[1] == doctest::Approx(0.3125).epsilon(1e-12));

    // One-step predictions: 1+0+0 = 1, then 1.5+0.25+0 = 1.75.
    CHECK(result.fitted[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.fitted[1] == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(result.sse == doctest::Approx(1.0 + 1.5625).epsilon(1e-12));
    CHECK(result.state.t == 2);
}

TEST_CASE("a constant series is a fixed point of the recursions") {
    std::vector<double> x(40, 7.5);
    for (double alpha : {0.1, 0.5, 0.9}) {
        for (double gamma : {0.2, 0.8}) {
            auto params = make_params(alpha, 0.3, gamma, 5, true);
            HoltWintersState init;
            init.level = 7.5;
            init.trend = 0.0;
            init.seasonals.assign(5, 0.0);
            auto result = smooth(x, params, init);
            CHECK(result.sse == doctest::Approx(0.0).scale(1.0));
            CHECK(result.state.level == doctest::Approx(7.5));
            CHECK(result.state.trend == doctest::Approx(0.0).scale(1.0));
            for (double s : result.state.seasonals) {
                CHECK(s == doctest::Approx(0.0).scale(1.0));
            }
            auto f = forecast_ets(result.state, params, 10);
            for (double v : f) CHECK(v == doctest::Approx(7.5));
        }
    }
}

TEST_CASE("an exact linear state tracks a pure trend with zero error") {
    std::vector<double> x(30);
    for (std::size_t t = 0; t < x.size(); ++t) x[t] = 2.0 * static_cast<double>(t + 1);
    HoltWintersState init;
    init.level = 0.0;
    init.trend = 2.0;
    init.seasonals.assign(4, 0.0);
    auto result = smooth(x, make_params(0.4, 0.3, 0.6, 4, true), init);
    CHECK(result.sse == doctest::Approx(0.0).scale(1.0).epsilon(1e-18));
    CHECK(result.state.trend == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("smoothing is shift-equivariant") {
    Rng rng(88);
    std::vector<double> x(60);
    for (std::size_t t = 0; t < x.size(); ++t) {
        x[t] = 10.0 + 3.0 * std::sin(static_cast<double>(t) * 2.0 * 3.14159265358979 / 6.0) +
               rng.normal(0.0, 0.5);
    }
    std::vector<double> shifted = x;
    for (auto& v : shifted) v += 100.0;

    auto params = make_params(0.3, 0.2, 0.4, 6, true);
    auto a = smooth(x, params, initialize_state(x, params));
    auto b = smooth(shifted, params, initialize_state(shifted, params));

    CHECK(b.state.level == doctest::Approx(a.state.level + 100.0).epsilon(1e-9));
    CHECK(b.state.trend == doctest::Approx(a.state.trend).scale(1.0).epsilon(1e-9));
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(b.state.seasonals[j] ==
              doctest::Approx(a.state.seasonals[j]).scale(1.0).epsilon(1e-9));
    }
    auto fa = forecast_ets(a.state, params, 12);
    auto fb = forecast_ets(b.state, params, 12);
    for (std::size_t n = 0; n < 12; ++n) {
        CHECK(fb[n] == doctest::Approx(fa[n] + 100.0).epsilon(1e-9));
    }
}

TEST_CASE("forecast substitutes directly into the forecast equation") {
    HoltWintersState state;
    state.level = 10.0;
    state.trend = 0.0;
    state.seasonals = {1.0, -1.0};
    auto f = forecast_ets(state, make_params(0.5, 0.5, 0.5, 2, true), 4);
    CHECK(f == std::vector<double>{11.0, 9.0, 11.0, 9.0});

    state.level = 10.0;
    state.trend = 2.0;
    state.seasonals = {0.0, 0.0};
    f = forecast_ets(state, make_params(0.5, 0.5, 0.5, 2, true), 3);
    CHECK(f == std::vector<double>{12.0, 14.0, 16.0});

    state.level = 5.0;
    state.trend = 1.0;
    state.seasonals = {0.5, -0.5};
    f = forecast_ets(state, make_params(0.5, 0.5, 0.5, 2, true), 2);
    CHECK(f[0] == doctest::Approx(6.5));
    CHECK(f[1] == doctest::Approx(6.5));
}

TEST_CASE("forecast seasonal indexing cycles with the period") {
    for (std::size_t p = 2; p <= 8; ++p) {
        HoltWintersState state;
        state.level = 10.0;
        state.trend = 0.0;
        state.seasonals.resize(p);
        for (std::size_t j = 0; j < p; ++j) {
            state.seasonals[j] = (j % 2 == 0) ? 1.0 : -1.0;
        }
        auto params = make_params(0.5, 0.5, 0.5, p, false);
        auto f = forecast_ets(state, params, 3 * p);
        for (std::size_t n = 1; n <= 3 * p; ++n) {
            CHECK(f[n - 1] == doctest::Approx(10.0 + state.seasonals[(n - 1) % p]));
        }
    }
}

TEST_CASE("fitting a noiseless seasonal signal reaches a tiny burned-in error") {
    const std::size_t period = 12;
    std::vector<double> x(8 * period);
    for (std::size_t t = 0; t < x.size(); ++t) {
        x[t] = 10.0 + 5.0 * std::sin(2.0 * 3.14159265358979323846 * static_cast<double>(t) / 12.0);
    }
    auto fit = fit_holt_winters(x, period, false);
    auto rerun = smooth(x, fit.params, initialize_state(x, fit.params));
    double sse_after_burn_in = 0.0;
    std::size_t count = 0;
    for (std::size_t t = 2 * period; t < x.size(); ++t) {
        double e = x[t] - rerun.fitted[t];
        sse_after_burn_in += e * e;
        ++count;
    }
    CHECK(sse_after_burn_in / static_cast<double>(count) < 0.01);
}

TEST_CASE("fitting a constant series lands on the smallest grid point") {
    std::vector<double> x(30, 4.0);
    auto fit = fit_holt_winters(x, 3, false);
    CHECK(fit.sse == doctest::Approx(0.0).scale(1.0));
    CHECK(fit.params.alpha == doctest::Approx(0.05));
    CHECK(fit.params.gamma == doctest::Approx(0.05));
    CHECK(fit.params.beta == 0.0);
}

TEST_CASE("fitted parameters beat every grid candidate") {
    Rng rng(99);
    std::vector<double> x(400);
    double prev = 0.0;
    for (auto& v : x) {
        prev = 0.6 * prev + rng.normal();
        v = 50.0 + prev;
    }
    auto fit = fit_holt_winters(x, 12, false);
    auto init = initialize_state(x, fit.params);
    for (int ia = 1; ia <= 19; ++ia) {
        for (int ig = 1; ig <= 19; ++ig) {
            auto params = make_params(0.05 * ia, 0.0, 0.05 * ig, 12, false);
            double sse = smooth(x, params, init).sse;
            CHECK(fit.sse <= sse + 1e-9);
        }
    }
}

TEST_CASE("fit with trend recovers a clean linear-plus-seasonal signal") {
    const std::size_t period = 6;
    std::vector<double> x(20 * period);
    for (std::size_t t = 0; t < x.size(); ++t) {
        x[t] = 3.0 + 0.25 * static_cast<double>(t) +
               2.0 * std::sin(2.0 * 3.14159265358979323846 * static_cast<double>(t) / 6.0);
    }
    auto fit = fit_holt_winters(x, period, true);
    auto f = forecast_ets(fit.state, fit.params, period);
    for (std::size_t n = 1; n <= period; ++n) {
        const std::size_t t = x.size() + n - 1;
        const double truth = 3.0 + 0.25 * static_cast<double>(t) +
                             2.0 * std::sin(2.0 * 3.14159265358979323846 *
                                            static_cast<double>(t) / 6.0);
        CHECK(std::fabs(f[n - 1] - truth) < 0.35);
    }
}
