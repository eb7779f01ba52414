#include "tempcast/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string_view>

namespace tempcast::kernels {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sum_sq(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double sum_sq_diff(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

double sum_abs_diff(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - y[i]);
    return acc;
}

}  // namespace scalar

namespace {

Backend detect_backend() {
#ifdef TEMPCAST_HAVE_AVX2
    if (const char* forced = std::getenv("TEMPCAST_SIMD")) {
        std::string_view v(forced);
        if (v == "scalar") return Backend::Scalar;
        if (v == "avx2") return Backend::Avx2;
    }
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return Backend::Avx2;
    }
    return Backend::Scalar;
#else
    return Backend::Scalar;
#endif
}

}  // namespace

Backend active_backend() {
    static const Backend backend = detect_backend();
    return backend;
}

const char* backend_name(Backend backend) {
    switch (backend) {
        case Backend::Avx2:
            return "avx2";
        case Backend::Scalar:
        default:
            return "scalar";
    }
}

#ifdef TEMPCAST_HAVE_AVX2
#define TEMPCAST_DISPATCH(fn, ...)                                          \
    (active_backend() == Backend::Avx2 ? avx2::fn(__VA_ARGS__)              \
                                       : scalar::fn(__VA_ARGS__))
#else
#define TEMPCAST_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double dot(const double* x, const double* y, std::size_t n) {
    return TEMPCAST_DISPATCH(dot, x, y, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    TEMPCAST_DISPATCH(axpy, alpha, x, y, n);
}

double sum(const double* x, std::size_t n) { return TEMPCAST_DISPATCH(sum, x, n); }

double sum_sq(const double* x, std::size_t n) {
    return TEMPCAST_DISPATCH(sum_sq, x, n);
}

double sum_sq_diff(const double* x, const double* y, std::size_t n) {
    return TEMPCAST_DISPATCH(sum_sq_diff, x, y, n);
}

double sum_abs_diff(const double* x, const double* y, std::size_t n) {
    return TEMPCAST_DISPATCH(sum_abs_diff, x, y, n);
}

#undef TEMPCAST_DISPATCH

}  // namespace tempcast::kernels
