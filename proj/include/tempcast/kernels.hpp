#pragma once

#include <cstddef>
#include <string>

namespace tempcast::kernels {

/// Which implementation of the hot loops is active.
enum class Backend { Scalar, Avx2 };

/// The backend selected at startup: AVX2 when the build enabled it and the
/// CPU supports it, unless the TEMPCAST_SIMD environment variable forces a
/// choice ("scalar" or "avx2").
Backend active_backend();

const char* backend_name(Backend backend);

// Hot numeric primitives. Each has a scalar reference implementation and,
// on x86-64 builds, an AVX2+FMA variant; the dispatcher picks one at load
// time. Results may differ between backends by a few ulps because FMA
// contracts the rounding of multiply-add chains.

/// Inner product of x and y (n elements each).
double dot(const double* x, const double* y, std::size_t n);

/// y := y + alpha * x (n elements).
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// Sum of the elements of x.
double sum(const double* x, std::size_t n);

/// Sum of squares of the elements of x.
double sum_sq(const double* x, std::size_t n);

/// Sum of squared differences sum_i (x_i - y_i)^2.
double sum_sq_diff(const double* x, const double* y, std::size_t n);

/// Sum of absolute differences sum_i |x_i - y_i|.
double sum_abs_diff(const double* x, const double* y, std::size_t n);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_sq_diff(const double* x, const double* y, std::size_t n);
double sum_abs_diff(const double* x, const double* y, std::size_t n);
}  // namespace scalar

#ifdef TEMPCAST_HAVE_AVX2
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_sq_diff(const double* x, const double* y, std::size_t n);
double sum_abs_diff(const double* x, const double* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace tempcast::kernels
