#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tempcast/series.hpp"

namespace tempcast {

/// Root mean squared error with the population (N) denominator.
/// Throws DimensionMismatch, EmptyInput, NonFiniteValue.
double rmse(const std::vector<double>& actual, const std::vector<double>& predicted);

/// Mean absolute error. Throws DimensionMismatch, EmptyInput, NonFiniteValue.
double mae(const std::vector<double>& actual, const std::vector<double>& predicted);

/// One model's accuracy on one (city, variable) evaluation set, or a
/// structured failure. Metrics and failure are mutually exclusive.
struct EvalReport {
    std::string model_name;
    std::string city;
    Variable variable = Variable::Tmax;
    bool ok = true;
    double rmse = 0.0;   // °F; meaningful only when ok
    double mae = 0.0;    // °F; meaningful only when ok
    std::size_t n = 0;   // evaluation points
    std::string failure; // reason when !ok
};

/// Build a successful report from an evaluation set.
EvalReport evaluate_forecast(const std::string& model_name, const std::string& city,
                             Variable variable, const std::vector<double>& actual,
                             const std::vector<double>& predicted);

/// One ranked row within a (city, variable) group. rank is 1-based among the
/// successful models; 0 for failures.
struct RankedEntry {
    EvalReport report;
    std::size_t rank = 0;
};

struct ComparisonGroup {
    std::string city;
    Variable variable = Variable::Tmax;
    std::vector<RankedEntry> entries;  // RMSE ascending, failures last
};

/// One model's mean rank across the groups where it produced metrics.
struct OverallRank {
    std::string model_name;
    double mean_rank = 0.0;    // meaningful only when groups_ranked > 0
    std::size_t groups_ranked = 0;
};

struct ModelComparison {
    std::vector<ComparisonGroup> groups;   // ordered by (city, variable)
    std::vector<OverallRank> overall;      // mean rank ascending, unranked last
};

/// Group reports by (city, variable), rank models by RMSE ascending within
/// each group (ties broken by MAE, then model name), list failures last, and
/// aggregate an overall mean rank per model. Deterministic under permutation
/// of the input. Throws EmptyInput.
ModelComparison compare_models(const std::vector<EvalReport>& reports);

/// Aligned text table; failed entries render their metrics as "--".
std::string comparison_table(const ModelComparison& comparison);

/// CSV with header city,variable,rank,model,rmse,mae,n,failure.
std::string comparison_csv(const ModelComparison& comparison);

/// JSON document (groups plus overall ranking) as a serialized string.
std::string comparison_json(const ModelComparison& comparison);

}  // namespace tempcast
