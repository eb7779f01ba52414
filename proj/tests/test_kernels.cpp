#include "tempcast/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

#include "tempcast/rng.hpp"

namespace k = tempcast::kernels;

namespace {

std::vector<double> random_vec(tempcast::Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal(0.0, 10.0);
    return v;
}

}  // namespace

TEST_CASE("scalar kernels agree with hand-computed values") {
    const double x[] = {1.0, 2.0, 3.0, 4.0};
    const double y[] = {5.0, 6.0, 7.0, 8.0};
    CHECK(k::scalar::dot(x, y, 4) == doctest::Approx(70.0));
    CHECK(k::scalar::sum(x, 4) == doctest::Approx(10.0));
    CHECK(k::scalar::sum_sq(x, 4) == doctest::Approx(30.0));
    CHECK(k::scalar::sum_sq_diff(x, y, 4) == doctest::Approx(64.0));
    CHECK(k::scalar::sum_abs_diff(x, y, 4) == doctest::Approx(16.0));

    double acc[] = {1.0, 1.0, 1.0, 1.0};
    k::scalar::axpy(2.0, x, acc, 4);
    CHECK(acc[0] == doctest::Approx(3.0));
    CHECK(acc[3] == doctest::Approx(9.0));
}

TEST_CASE("dispatched kernels agree with scalar reference") {
    tempcast::Rng rng(2024);
    // Lengths chosen to exercise every unrolling remainder, including empty.
    for (std::size_t n = 0; n <= 17; ++n) {
        auto x = random_vec(rng, n);
        auto y = random_vec(rng, n);
        CAPTURE(n);
        CHECK(k::dot(x.data(), y.data(), n) ==
              doctest::Approx(k::scalar::dot(x.data(), y.data(), n)).epsilon(1e-12));
        CHECK(k::sum(x.data(), n) ==
              doctest::Approx(k::scalar::sum(x.data(), n)).epsilon(1e-12));
        CHECK(k::sum_sq(x.data(), n) ==
              doctest::Approx(k::scalar::sum_sq(x.data(), n)).epsilon(1e-12));
        CHECK(k::sum_sq_diff(x.data(), y.data(), n) ==
              doctest::Approx(k::scalar::sum_sq_diff(x.data(), y.data(), n))
                  .epsilon(1e-12));
        CHECK(k::sum_abs_diff(x.data(), y.data(), n) ==
              doctest::Approx(k::scalar::sum_abs_diff(x.data(), y.data(), n))
                  .epsilon(1e-12));

        auto ya = y, yb = y;
        k::axpy(1.5, x.data(), ya.data(), n);
        k::scalar::axpy(1.5, x.data(), yb.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-12));
        }
    }
}

#ifdef TEMPCAST_HAVE_AVX2
TEST_CASE("avx2 kernels match scalar on long vectors") {
    if (k::active_backend() != k::Backend::Avx2) {
        MESSAGE("AVX2 unavailable on this machine; skipping");
        return;
    }
    tempcast::Rng rng(7);
    for (std::size_t n : {64u, 1000u, 4096u, 5003u}) {
        auto x = random_vec(rng, n);
        auto y = random_vec(rng, n);
        // FMA contraction changes rounding, so compare with a relative
        // tolerance instead of bit equality.
        double ref = k::scalar::dot(x.data(), y.data(), n);
        CHECK(k::avx2::dot(x.data(), y.data(), n) ==
              doctest::Approx(ref).epsilon(1e-11));
        CHECK(k::avx2::sum(x.data(), n) ==
              doctest::Approx(k::scalar::sum(x.data(), n)).epsilon(1e-11));
        CHECK(k::avx2::sum_sq(x.data(), n) ==
              doctest::Approx(k::scalar::sum_sq(x.data(), n)).epsilon(1e-11));
        CHECK(k::avx2::sum_sq_diff(x.data(), y.data(), n) ==
              doctest::Approx(k::scalar::sum_sq_diff(x.data(), y.data(), n))
                  .epsilon(1e-11));
        CHECK(k::avx2::sum_abs_diff(x.data(), y.data(), n) ==
              doctest::Approx(k::scalar::sum_abs_diff(x.data(), y.data(), n))
                  .epsilon(1e-11));
    }
}
#endif

TEST_CASE("backend name strings") {
    CHECK(std::string(k::backend_name(k::Backend::Scalar)) == "scalar");
    CHECK(std::string(k::backend_name(k::Backend::Avx2)) == "avx2");
    // Whatever was selected must render to one of the two names.
    std::string active = k::backend_name(k::active_backend());
    CHECK((active == "scalar" || active == "avx2"));
}
