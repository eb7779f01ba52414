#include "tempcast/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "tempcast/errors.hpp"
#include "tempcast/kernels.hpp"

namespace tempcast {

namespace {

// Attempt an unpivoted Cholesky of a + jitter*I into `lower`. Returns false
// on breakdown (non-positive or non-finite pivot) without throwing, so the
// caller can escalate the jitter.
bool try_cholesky(const Matrix& a, double jitter, Matrix& lower) {
    const std::size_t n = a.rows;
    lower = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        // Rows of L are contiguous, so partial rows feed the dot kernel.
        double d = a(j, j) + jitter - kernels::dot(lower.row(j), lower.row(j), j);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        lower(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = (a(i, j) - kernels::dot(lower.row(i), lower.row(j), j)) / ljj;
            if (!std::isfinite(v)) return false;
            lower(i, j) = v;
        }
    }
    return true;
}

}  // namespace

CholeskyFactor cholesky(const Matrix& a, double max_jitter) {
    if (a.rows != a.cols || a.rows == 0) {
        throw NotSymmetric("cholesky requires a non-empty square matrix");
    }
    double scale = 0.0;
    for (double v : a.data) {
        if (std::isfinite(v)) scale = std::max(scale, std::fabs(v));
    }
    const double tol = 1e-9 * std::max(1.0, scale);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = i + 1; j < a.cols; ++j) {
            double lhs = a(i, j), rhs = a(j, i);
            bool both_nan = std::isnan(lhs) && std::isnan(rhs);
            if (!both_nan && !(std::fabs(lhs - rhs) <= tol)) {
                throw NotSymmetric("matrix is not symmetric within tolerance");
            }
        }
    }

    static const double ladder[] = {0.0, 1e-10, 1e-8, 1e-6, 1e-4};
    CholeskyFactor factor;
    for (double jitter : ladder) {
        if (jitter > max_jitter) break;
        if (try_cholesky(a, jitter, factor.lower)) {
            factor.jitter_used = jitter;
            return factor;
        }
    }
    throw NotPositiveDefinite("matrix is not positive definite at any admissible jitter");
}

std::vector<double> solve_lower(const Matrix& lower, const std::vector<double>& b) {
    const std::size_t n = lower.rows;
    if (b.size() != n) throw DimensionMismatch("triangular solve: size mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = (b[i] - kernels::dot(lower.row(i), y.data(), i)) / lower(i, i);
    }
    return y;
}

std::vector<double> solve_lower_transposed(const Matrix& lower, const std::vector<double>& y) {
    const std::size_t n = lower.rows;
    if (y.size() != n) throw DimensionMismatch("triangular solve: size mismatch");
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        // Row ii of L^T is column ii of L, which is strided; accumulate
        // directly since this backward pass is not on the hot path.
        double acc = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= lower(j, ii) * x[j];
        x[ii] = acc / lower(ii, ii);
    }
    return x;
}

std::vector<double> solve_spd(const CholeskyFactor& factor, const std::vector<double>& b) {
    if (b.size() != factor.lower.rows) {
        throw DimensionMismatch("solve_spd: right-hand side length does not match factor");
    }
    return solve_lower_transposed(factor.lower, solve_lower(factor.lower, b));
}

OlsResult ols(const Matrix& design, const std::vector<double>& target) {
    const std::size_t n = design.rows;
    const std::size_t p = design.cols;
    if (target.size() != n) {
        throw DimensionMismatch("ols: target length does not match design rows");
    }
    if (n < p) throw Underdetermined("ols: fewer rows than coefficients");
    if (p == 0) throw Underdetermined("ols: design has no columns");

    // Copy columns into contiguous buffers so the Gram products vectorize.
    std::vector<std::vector<double>> columns(p, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) columns[j][i] = design(i, j);
    }

    Matrix gram(p, p);
    std::vector<double> xty(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double v = kernels::dot(columns[i].data(), columns[j].data(), n);
            gram(i, j) = v;
            gram(j, i) = v;
        }
        xty[i] = kernels::dot(columns[i].data(), target.data(), n);
    }

    CholeskyFactor factor;
    try {
        factor = cholesky(gram, 0.0);  // no jitter: singularity must surface
    } catch (const NotPositiveDefinite&) {
        throw RankDeficient("ols: design matrix is rank deficient");
    }

    OlsResult result;
    result.coefficients = solve_spd(factor, xty);

    result.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.residuals[i] = target[i] - kernels::dot(design.row(i), result.coefficients.data(), p);
    }
    result.sse = kernels::sum_sq(result.residuals.data(), n);
    result.residual_variance = (n > p) ? result.sse / static_cast<double>(n - p) : 0.0;

    // Diagonal of (X^T X)^{-1} via one solve per basis vector.
    result.standard_errors.resize(p);
    std::vector<double> e(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        e[i] = 1.0;
        std::vector<double> zi = solve_spd(factor, e);
        e[i] = 0.0;
        result.standard_errors[i] = std::sqrt(std::max(0.0, result.residual_variance * zi[i]));
    }
    return result;
}

}  // namespace tempcast
