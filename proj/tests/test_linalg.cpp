#include "tempcast/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "tempcast/errors.hpp"
#include "tempcast/rng.hpp"

using namespace tempcast;

namespace {

Matrix from_rows(std::size_t r, std::size_t c, std::initializer_list<double> vals) {
    Matrix m(r, c);
    std::size_t i = 0;
    for (double v : vals) m.data[i++] = v;
    return m;
}

Matrix random_spd(Rng& rng, std::size_t n) {
    // B B^T + I is symmetric positive definite for any B.
    Matrix b(n, n);
    for (auto& v : b.data) v = rng.normal(0.0, 1.0);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = (i == j) ? 1.0 : 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += b(i, k) * b(j, k);
            a(i, j) = acc;
        }
    }
    return a;
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity with zero jitter") {
    auto factor = cholesky(Matrix::identity(3));
    CHECK(factor.jitter_used == 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(factor.lower(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("cholesky matches the hand factorization of [[4,2],[2,3]]") {
    auto factor = cholesky(from_rows(2, 2, {4, 2, 2, 3}));
    CHECK(factor.jitter_used == 0.0);
    CHECK(factor.lower(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(factor.lower(0, 1) == doctest::Approx(0.0));
    CHECK(factor.lower(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(factor.lower(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("indefinite matrix exhausts the jitter ladder") {
    // Eigenvalues of [[1,2],[2,1]] are 3 and -1; 1e-4 of jitter cannot fix it.
    CHECK_THROWS_AS(cholesky(from_rows(2, 2, {1, 2, 2, 1}), 1e-4), NotPositiveDefinite);
}

TEST_CASE("singular PSD matrix succeeds at the first nonzero jitter rung") {
    auto factor = cholesky(from_rows(2, 2, {1, 1, 1, 1}));
    CHECK(factor.jitter_used == 1e-10);
}

TEST_CASE("max_jitter caps the ladder") {
    CHECK_THROWS_AS(cholesky(from_rows(2, 2, {1, 1, 1, 1}), 0.0), NotPositiveDefinite);
}

TEST_CASE("asymmetric input is rejected") {
    CHECK_THROWS_AS(cholesky(from_rows(2, 2, {1, 2, 3, 4})), NotSymmetric);
    CHECK_THROWS_AS(cholesky(Matrix(2, 3)), NotSymmetric);
}

TEST_CASE("NaN-contaminated matrix surfaces as NotPositiveDefinite") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(cholesky(from_rows(2, 2, {nan, nan, nan, nan})), NotPositiveDefinite);
}

TEST_CASE("solve_spd with an identity factor returns the right-hand side") {
    auto factor = cholesky(Matrix::identity(2));
    auto x = solve_spd(factor, {3.0, 7.0});
    CHECK(x[0] == doctest::Approx(3.0));
    CHECK(x[1] == doctest::Approx(7.0));
}

TEST_CASE("solve_spd matches the hand 2x2 solve") {
    auto factor = cholesky(from_rows(2, 2, {4, 2, 2, 3}));
    auto x = solve_spd(factor, {10.0, 8.0});
    CHECK(x[0] == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("solve_spd rejects a right-hand side of the wrong length") {
    auto factor = cholesky(Matrix::identity(2));
    CHECK_THROWS_AS(solve_spd(factor, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("cholesky reconstructs random SPD matrices") {
    Rng rng(31);
    for (std::size_t n : {2u, 5u, 17u, 40u}) {
        Matrix a = random_spd(rng, n);
        auto factor = cholesky(a);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double rec = 0.0;
                for (std::size_t t = 0; t <= std::min(i, j); ++t) {
                    rec += factor.lower(i, t) * factor.lower(j, t);
                }
                double target = a(i, j) + (i == j ? factor.jitter_used : 0.0);
                num += (rec - target) * (rec - target);
                den += target * target;
            }
        }
        CHECK(std::sqrt(num) <= 1e-8 * std::sqrt(den));
    }
}

TEST_CASE("solve recovers a planted solution on random SPD systems") {
    Rng rng(77);
    for (std::size_t n = 2; n <= 50; n += 7) {
        Matrix a = random_spd(rng, n);
        std::vector<double> x_true(n);
        for (auto& v : x_true) v = rng.normal(0.0, 2.0);
        std::vector<double> b(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) b[i] += a(i, j) * x_true[j];
        }
        auto x = solve_spd(cholesky(a), b);
        double scale = 0.0;
        for (double v : x_true) scale = std::max(scale, std::fabs(v));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::fabs(x[i] - x_true[i]) <= 1e-7 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("ols recovers an exact line with zero residual variance") {
    auto res = ols(from_rows(3, 2, {1, 0, 1, 1, 1, 2}), {3.0, 5.0, 7.0});
    CHECK(res.coefficients[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(res.coefficients[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(res.sse == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(res.residual_variance == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("ols mean model matches the hand computation") {
    auto res = ols(from_rows(3, 1, {1, 1, 1}), {1.0, 2.0, 3.0});
    CHECK(res.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(res.residual_variance == doctest::Approx(1.0).epsilon(1e-12));
    // se = sqrt(s^2 / n) for the intercept-only model
    CHECK(res.standard_errors[0] == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("ols standard errors match a hand-solved 4x2 fit") {
    // X^T X = [[4,6],[6,14]], beta = [0.9, 1.9], SSE = 0.7, s^2 = 0.35,
    // diag (X^T X)^{-1} = [0.7, 0.2].
    auto res = ols(from_rows(4, 2, {1, 0, 1, 1, 1, 2, 1, 3}), {1.0, 3.0, 4.0, 7.0});
    CHECK(res.coefficients[0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(res.coefficients[1] == doctest::Approx(1.9).epsilon(1e-12));
    CHECK(res.sse == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(res.residual_variance == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(res.standard_errors[0] == doctest::Approx(std::sqrt(0.245)).epsilon(1e-12));
    CHECK(res.standard_errors[1] == doctest::Approx(std::sqrt(0.07)).epsilon(1e-12));
}

TEST_CASE("ols rejects duplicate columns as rank deficient") {
    CHECK_THROWS_AS(ols(from_rows(3, 2, {1, 1, 1, 1, 1, 1}), {1.0, 2.0, 3.0}),
                    RankDeficient);
}

TEST_CASE("ols rejects underdetermined systems") {
    CHECK_THROWS_AS(ols(from_rows(1, 2, {1, 2}), {1.0}), Underdetermined);
}

TEST_CASE("ols rejects mismatched target length") {
    CHECK_THROWS_AS(ols(from_rows(3, 1, {1, 1, 1}), {1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("ols recovers exact coefficients on noiseless random data") {
    Rng rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 40, p = 4;
        Matrix x(n, p);
        for (std::size_t i = 0; i < n; ++i) {
            x(i, 0) = 1.0;
            for (std::size_t j = 1; j < p; ++j) x(i, j) = rng.normal(0.0, 3.0);
        }
        std::vector<double> beta = {1.5, -2.0, 0.25, 4.0};
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < p; ++j) acc += x(i, j) * beta[j];
            y[i] = acc;
        }
        auto res = ols(x, y);
        for (std::size_t j = 0; j < p; ++j) {
            CHECK(res.coefficients[j] == doctest::Approx(beta[j]).epsilon(1e-9));
        }
    }
}
