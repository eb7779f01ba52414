#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tempcast {

struct NelderMeadOptions {
    double initial_step = 0.1;   // simplex edge length along each axis
    std::size_t max_evals = 0;   // 0 means no cap
    double f_tol = 1e-10;        // spread of simplex values, relative to best
    double x_tol = 1e-8;         // simplex diameter, absolute
};

struct NelderMeadResult {
    std::vector<double> x;
    double fval = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Classic Nelder-Mead downhill simplex (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5) with deterministic tie handling. Stops when
/// both the value spread and the simplex diameter fall under the tolerances,
/// or when max_evals is exhausted (converged = false in that case).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace tempcast
