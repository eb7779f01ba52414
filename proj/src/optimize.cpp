#include "tempcast/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tempcast {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
    const std::size_t dim = x0.size();
    NelderMeadResult result;
    result.evaluations = 0;

    auto evaluate = [&](const std::vector<double>& x) {
        ++result.evaluations;
        double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };

    if (dim == 0) {
        result.x = x0;
        result.fval = evaluate(x0);
        result.converged = true;
        return result;
    }

    // Initial simplex: x0 plus one vertex stepped along each axis.
    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
    for (std::size_t i = 0; i <= dim; ++i) values[i] = evaluate(simplex[i]);

    // Index order, stable so equal values keep insertion order (determinism).
    std::vector<std::size_t> order(dim + 1);
    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    };

    auto out_of_budget = [&] {
        return options.max_evals != 0 && result.evaluations >= options.max_evals;
    };

    while (true) {
        sort_order();
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double diameter = 0.0;
        for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                diameter = std::max(diameter,
                                    std::fabs(simplex[order[i]][j] - simplex[best][j]));
            }
        }
        const double spread = values[worst] - values[best];
        if (spread <= options.f_tol * (1.0 + std::fabs(values[best])) &&
            diameter <= options.x_tol) {
            result.converged = true;
            break;
        }
        if (out_of_budget()) break;

        // Centroid of all vertices except the worst.
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
            }
            return p;
        };

        std::vector<double> reflected = blend(-1.0);
        double f_reflected = evaluate(reflected);

        if (f_reflected < values[best]) {
            std::vector<double> expanded = blend(-2.0);
            double f_expanded = evaluate(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                values[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = f_reflected;
            }
        } else if (f_reflected < values[second_worst]) {
            simplex[worst] = std::move(reflected);
            values[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < values[worst];
            std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
            double f_contracted = evaluate(contracted);
            if (f_contracted < std::min(f_reflected, values[worst])) {
                simplex[worst] = std::move(contracted);
                values[worst] = f_contracted;
            } else {
                // Shrink every vertex toward the best one.
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < dim; ++j) {
                        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    }
                    values[i] = evaluate(simplex[i]);
                    if (out_of_budget()) break;
                }
            }
        }
        if (out_of_budget() && !result.converged) break;
    }

    sort_order();
    result.x = simplex[order.front()];
    result.fval = values[order.front()];
    return result;
}

}  // namespace tempcast
