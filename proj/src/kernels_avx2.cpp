// AVX2+FMA variants of the hot loops. This translation unit is the only one
// compiled with -mavx2 -mfma; it must not be entered unless the dispatcher
// verified CPU support.
#include "tempcast/kernels.hpp"

#ifdef TEMPCAST_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

namespace tempcast::kernels::avx2 {

namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double sum_sq(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc0 = _mm256_fmadd_pd(v, v, acc0);
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double sum_sq_diff(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) {
        double d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

double sum_abs_diff(const double* x, const double* y, std::size_t n) {
    // Clear the sign bit to take |d| lane-wise.
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc0 = _mm256_add_pd(acc0, _mm256_andnot_pd(sign_mask, d));
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) acc += std::fabs(x[i] - y[i]);
    return acc;
}

}  // namespace tempcast::kernels::avx2

#endif  // TEMPCAST_HAVE_AVX2
