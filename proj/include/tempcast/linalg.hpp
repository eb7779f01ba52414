#pragma once

#include <cstddef>
#include <vector>

namespace tempcast {

/// Dense row-major matrix of doubles. Deliberately minimal: just enough for
/// Cholesky-based solves and least squares.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major, rows*cols entries

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    /// Pointer to the start of row i (rows are contiguous).
    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

/// Result of a (possibly jittered) Cholesky factorization: the input plus
/// jitter_used * I equals lower * lower^T.
struct CholeskyFactor {
    Matrix lower;
    double jitter_used = 0.0;
};

/// Factor a symmetric positive definite matrix as L L^T. If the factorization
/// breaks down, retries with a + jI for j escalating through decade steps
/// {1e-10, 1e-8, 1e-6, 1e-4} capped at max_jitter, and records the jitter that
/// succeeded.
///
/// Throws NotSymmetric if a is not square-symmetric to 1e-9 relative, and
/// NotPositiveDefinite once every admissible jitter level has failed.
CholeskyFactor cholesky(const Matrix& a, double max_jitter = 1e-4);

/// Solve (A + jI) x = b given the factor of A + jI, as a forward then a
/// backward triangular solve. Throws DimensionMismatch if sizes disagree.
std::vector<double> solve_spd(const CholeskyFactor& factor, const std::vector<double>& b);

/// Forward-substitution solve of L y = b for lower-triangular L.
std::vector<double> solve_lower(const Matrix& lower, const std::vector<double>& b);

/// Back-substitution solve of L^T x = y using the same lower-triangular L.
std::vector<double> solve_lower_transposed(const Matrix& lower, const std::vector<double>& y);

/// Ordinary least squares fit of design * beta ~ target.
struct OlsResult {
    std::vector<double> coefficients;
    double residual_variance = 0.0;  // SSE / (rows - cols); 0 when saturated
    std::vector<double> standard_errors;
    std::vector<double> residuals;
    double sse = 0.0;
};

/// Minimize ||design * beta - target||^2 through the normal equations
/// (factored, never inverted). residual_variance is SSE over the residual
/// degrees of freedom; standard errors come from the diagonal of
/// residual_variance * (design^T design)^{-1}.
///
/// Throws Underdetermined when rows < cols, RankDeficient when the normal
/// equations are singular, DimensionMismatch when target length differs from
/// design rows.
OlsResult ols(const Matrix& design, const std::vector<double>& target);

}  // namespace tempcast
