#include "tempcast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "tempcast/errors.hpp"
#include "tempcast/kernels.hpp"

namespace tempcast {

namespace {

void validate_pair(const std::vector<double>& actual, const std::vector<double>& predicted) {
    if (actual.size() != predicted.size()) {
        throw DimensionMismatch("metric inputs must have equal length");
    }
    if (actual.empty()) throw EmptyInput("metric inputs must be non-empty");
    for (double v : actual) {
        if (!std::isfinite(v)) throw NonFiniteValue("non-finite actual value");
    }
    for (double v : predicted) {
        if (!std::isfinite(v)) throw NonFiniteValue("non-finite predicted value");
    }
}

std::string format_metric(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

}  // namespace

double rmse(const std::vector<double>& actual, const std::vector<double>& predicted) {
    validate_pair(actual, predicted);
    const double ss = kernels::sum_sq_diff(actual.data(), predicted.data(), actual.size());
    return std::sqrt(ss / static_cast<double>(actual.size()));
}

double mae(const std::vector<double>& actual, const std::vector<double>& predicted) {
    validate_pair(actual, predicted);
    const double sa = kernels::sum_abs_diff(actual.data(), predicted.data(), actual.size());
    return sa / static_cast<double>(actual.size());
}

EvalReport evaluate_forecast(const std::string& model_name, const std::string& city,
                             Variable variable, const std::vector<double>& actual,
                             const std::vector<double>& predicted) {
    EvalReport report;
    report.model_name = model_name;
    report.city = city;
    report.variable = variable;
    report.rmse = rmse(actual, predicted);
    report.mae = mae(actual, predicted);
    report.n = actual.size();
    return report;
}

ModelComparison compare_models(const std::vector<EvalReport>& reports) {
    if (reports.empty()) throw EmptyInput("compare_models needs at least one report");

    std::map<std::pair<std::string, int>, std::vector<EvalReport>> grouped;
    for (const EvalReport& r : reports) {
        grouped[{r.city, static_cast<int>(r.variable)}].push_back(r);
    }

    ModelComparison comparison;
    std::map<std::string, std::pair<double, std::size_t>> rank_sums;  // model -> (sum, count)
    for (auto& [key, members] : grouped) {
        ComparisonGroup group;
        group.city = key.first;
        group.variable = static_cast<Variable>(key.second);
        std::sort(members.begin(), members.end(),
                  [](const EvalReport& a, const EvalReport& b) {
                      if (a.ok != b.ok) return a.ok;  // failures last
                      if (!a.ok) return a.model_name < b.model_name;
                      return std::tie(a.rmse, a.mae, a.model_name) <
                             std::tie(b.rmse, b.mae, b.model_name);
                  });
        std::size_t next_rank = 1;
        for (const EvalReport& r : members) {
            RankedEntry entry;
            entry.report = r;
            if (r.ok) {
                entry.rank = next_rank++;
                auto& [sum, count] = rank_sums[r.model_name];
                sum += static_cast<double>(entry.rank);
                count += 1;
            } else {
                rank_sums.try_emplace(r.model_name, 0.0, 0);
            }
            group.entries.push_back(std::move(entry));
        }
        comparison.groups.push_back(std::move(group));
    }

    for (const auto& [name, acc] : rank_sums) {
        OverallRank overall;
        overall.model_name = name;
        overall.groups_ranked = acc.second;
        if (acc.second > 0) overall.mean_rank = acc.first / static_cast<double>(acc.second);
        comparison.overall.push_back(std::move(overall));
    }
    std::sort(comparison.overall.begin(), comparison.overall.end(),
              [](const OverallRank& a, const OverallRank& b) {
                  const bool a_ranked = a.groups_ranked > 0;
                  const bool b_ranked = b.groups_ranked > 0;
                  if (a_ranked != b_ranked) return a_ranked;  // unranked last
                  if (a_ranked && a.mean_rank != b.mean_rank) return a.mean_rank < b.mean_rank;
                  return a.model_name < b.model_name;
              });
    return comparison;
}

std::string comparison_table(const ModelComparison& comparison) {
    std::ostringstream out;
    for (const ComparisonGroup& group : comparison.groups) {
        out << group.city << " / " << variable_name(group.variable) << "\n";
        std::size_t name_width = 5;
        for (const RankedEntry& e : group.entries) {
            name_width = std::max(name_width, e.report.model_name.size());
        }
        char line[256];
        std::snprintf(line, sizeof(line), "  %4s  %-*s  %10s  %10s  %6s\n", "rank",
                      static_cast<int>(name_width), "model", "rmse", "mae", "n");
        out << line;
        for (const RankedEntry& e : group.entries) {
            if (e.report.ok) {
                std::snprintf(line, sizeof(line), "  %4zu  %-*s  %10s  %10s  %6zu\n", e.rank,
                              static_cast<int>(name_width), e.report.model_name.c_str(),
                              format_metric(e.report.rmse).c_str(),
                              format_metric(e.report.mae).c_str(), e.report.n);
            } else {
                std::snprintf(line, sizeof(line), "  %4s  %-*s  %10s  %10s  %6s  %s\n", "--",
                              static_cast<int>(name_width), e.report.model_name.c_str(), "--",
                              "--", "--", e.report.failure.c_str());
            }
            out << line;
        }
        out << "\n";
    }
    out << "Overall ranking (mean rank across groups)\n";
    for (const OverallRank& o : comparison.overall) {
        char line[256];
        if (o.groups_ranked > 0) {
            std::snprintf(line, sizeof(line), "  %-16s  %.2f over %zu group%s\n",
                          o.model_name.c_str(), o.mean_rank, o.groups_ranked,
                          o.groups_ranked == 1 ? "" : "s");
        } else {
            std::snprintf(line, sizeof(line), "  %-16s  --\n", o.model_name.c_str());
        }
        out << line;
    }
    return out.str();
}

std::string comparison_csv(const ModelComparison& comparison) {
    std::ostringstream out;
    out << "city,variable,rank,model,rmse,mae,n,failure\n";
    for (const ComparisonGroup& group : comparison.groups) {
        for (const RankedEntry& e : group.entries) {
            out << group.city << ',' << variable_name(group.variable) << ',';
            if (e.report.ok) {
                out << e.rank << ',' << e.report.model_name << ','
                    << format_metric(e.report.rmse) << ',' << format_metric(e.report.mae)
                    << ',' << e.report.n << ",\n";
            } else {
                out << "--," << e.report.model_name << ",--,--,--," << e.report.failure
                    << "\n";
            }
        }
    }
    return out.str();
}

std::string comparison_json(const ModelComparison& comparison) {
    nlohmann::ordered_json doc;
    doc["groups"] = nlohmann::ordered_json::array();
    for (const ComparisonGroup& group : comparison.groups) {
        nlohmann::ordered_json g;
        g["city"] = group.city;
        g["variable"] = variable_name(group.variable);
        g["models"] = nlohmann::ordered_json::array();
        for (const RankedEntry& e : group.entries) {
            nlohmann::ordered_json row;
            row["model"] = e.report.model_name;
            if (e.report.ok) {
                row["rank"] = e.rank;
                row["rmse"] = e.report.rmse;
                row["mae"] = e.report.mae;
                row["n"] = e.report.n;
            } else {
                row["failure"] = e.report.failure;
            }
            g["models"].push_back(std::move(row));
        }
        doc["groups"].push_back(std::move(g));
    }
    doc["overall"] = nlohmann::ordered_json::array();
    for (const OverallRank& o : comparison.overall) {
        nlohmann::ordered_json row;
        row["model"] = o.model_name;
        if (o.groups_ranked > 0) {
            row["mean_rank"] = o.mean_rank;
            row["groups"] = o.groups_ranked;
        }
        doc["overall"].push_back(std::move(row));
    }
    return doc.dump(2);
}

}  // namespace tempcast
