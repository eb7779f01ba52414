#include "tempcast/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "tempcast/arima.hpp"
#include "tempcast/diagnostics.hpp"
#include "tempcast/errors.hpp"
#include "tempcast/ets.hpp"
#include "tempcast/gp.hpp"
#include "tempcast/metrics.hpp"
#include "tempcast/mlp.hpp"
#include "tempcast/model_io.hpp"
#include "tempcast/rng.hpp"
#include "tempcast/synthetic.hpp"
#include "tempcast/trend.hpp"

namespace tempcast {
namespace {

constexpr const char* kModelNames[] = {"arima", "ets", "mlp", "gp"};

std::string fmt4(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

std::string to_lower(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return text;
}

void write_text(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw EmptyFile("cannot open for writing: " + path);
    out << content;
    if (!out) throw EmptyFile("failed writing: " + path);
}

std::chrono::year_month_day parse_date_or_throw(const std::string& text) {
    const auto date = parse_date(text);
    if (!date) throw InvalidHyperparameter("unparseable date: " + text);
    return *date;
}

/// Run work(0..count-1) on up to `jobs` threads. Exceptions must be handled
/// inside `work`; each index owns its own result slot so assembly stays
/// deterministic regardless of scheduling.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& work) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) {
        workers.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                work(i);
            }
        });
    }
    for (auto& worker : workers) worker.join();
}

// ---------------------------------------------------------------------------
// Configuration loading
// ---------------------------------------------------------------------------

void reject_unknown_keys(const Json& object, const char* where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) known = true;
        }
        if (!known) {
            throw InvalidHyperparameter(std::string("config: unknown key \"") + item.key() +
                                        "\" in " + where);
        }
    }
}

template <typename T>
void maybe_get(const Json& object, const char* key, T& target) {
    const auto it = object.find(key);
    if (it == object.end()) return;
    try {
        target = it->get<T>();
    } catch (const Json::exception&) {
        throw InvalidHyperparameter(std::string("config: bad value for \"") + key + "\"");
    }
}

RunConfig config_from_json(const Json& doc) {
    if (!doc.is_object()) throw InvalidHyperparameter("config: top level must be an object");
    reject_unknown_keys(doc, "the top level",
                        {"data_dir", "cities", "variables", "years_window", "train_fraction",
                         "fill_policy", "seed", "output_dir", "jobs", "format", "arima", "ets",
                         "mlp", "gp"});
    RunConfig config;
    maybe_get(doc, "data_dir", config.data_dir);
    maybe_get(doc, "years_window", config.years_window);
    maybe_get(doc, "train_fraction", config.train_fraction);
    maybe_get(doc, "fill_policy", config.fill_policy);
    maybe_get(doc, "seed", config.seed);
    maybe_get(doc, "output_dir", config.output_dir);
    maybe_get(doc, "jobs", config.jobs);
    maybe_get(doc, "format", config.format);

    if (const auto it = doc.find("cities"); it != doc.end()) {
        if (!it->is_array()) throw InvalidHyperparameter("config: \"cities\" must be an array");
        config.cities.clear();
        for (const Json& entry : *it) {
            reject_unknown_keys(entry, "a city entry", {"name", "csv"});
            CityEntry city;
            maybe_get(entry, "name", city.name);
            maybe_get(entry, "csv", city.csv);
            if (city.name.empty() || city.csv.empty()) {
                throw InvalidHyperparameter("config: each city needs \"name\" and \"csv\"");
            }
            config.cities.push_back(std::move(city));
        }
    }
    if (const auto it = doc.find("variables"); it != doc.end()) {
        if (!it->is_array()) {
            throw InvalidHyperparameter("config: \"variables\" must be an array");
        }
        config.variables.clear();
        for (const Json& entry : *it) {
            const std::string name = entry.is_string() ? entry.get<std::string>() : "";
            const auto variable = parse_variable(name);
            if (!variable) throw InvalidHyperparameter("config: unknown variable \"" + name + "\"");
            config.variables.push_back(*variable);
        }
    }
    if (const auto it = doc.find("arima"); it != doc.end()) {
        reject_unknown_keys(*it, "\"arima\"", {"auto_order", "max_p", "p", "d", "q"});
        maybe_get(*it, "auto_order", config.arima.auto_order);
        maybe_get(*it, "max_p", config.arima.max_p);
        maybe_get(*it, "p", config.arima.p);
        maybe_get(*it, "d", config.arima.d);
        maybe_get(*it, "q", config.arima.q);
    }
    if (const auto it = doc.find("ets"); it != doc.end()) {
        reject_unknown_keys(*it, "\"ets\"", {"period", "trend"});
        maybe_get(*it, "period", config.ets.period);
        maybe_get(*it, "trend", config.ets.trend);
    }
    if (const auto it = doc.find("mlp"); it != doc.end()) {
        reject_unknown_keys(*it, "\"mlp\"",
                            {"input_size", "hidden_size", "dropout", "epochs", "batch_size",
                             "learning_rate"});
        maybe_get(*it, "input_size", config.mlp.input_size);
        maybe_get(*it, "hidden_size", config.mlp.hidden_size);
        maybe_get(*it, "dropout", config.mlp.dropout);
        maybe_get(*it, "epochs", config.mlp.epochs);
        maybe_get(*it, "batch_size", config.mlp.batch_size);
        maybe_get(*it, "learning_rate", config.mlp.learning_rate);
    }
    if (const auto it = doc.find("gp"); it != doc.end()) {
        reject_unknown_keys(*it, "\"gp\"", {"kernels", "max_train"});
        maybe_get(*it, "kernels", config.gp.kernels);
        maybe_get(*it, "max_train", config.gp.max_train);
    }
    return config;
}

void apply_default_city(RunConfig& config) {
    if (config.cities.empty()) {
        config.cities.push_back({"Synth City", config.data_dir + "/synthcity.csv"});
    }
}

// ---------------------------------------------------------------------------
// Data preparation shared by the pipeline commands
// ---------------------------------------------------------------------------

struct PreparedSeries {
    std::string city;
    Variable variable = Variable::Tmax;
    TimeSeries full;  // windowed, gap-free series the models consume
    DatasetSplit split;
    std::size_t rows_parsed = 0;
};

struct PrepFailure {
    std::string city;
    std::string variable;  // empty for city-level (parse) failures
    std::string csv;
    std::string error;
};

struct Prepared {
    std::vector<PreparedSeries> series;  // config order: city-major, then variable
    std::vector<PrepFailure> failures;
};

/// Keep only the trailing `years` years (window end = last observation).
TimeSeries trim_to_window(const TimeSeries& series, int years) {
    using namespace std::chrono;
    if (series.values.empty() || years < 1) return series;
    const year_month_day end = series.end_date();
    year_month_day cut{end.year() - std::chrono::years(years), end.month(), end.day()};
    if (!cut.ok()) cut = cut.year() / cut.month() / last;  // Feb 29 minus N years
    const sys_days window_start = sys_days(cut) + days(1);
    const auto offset = (window_start - sys_days(series.start_date)).count();
    if (offset <= 0) return series;
    TimeSeries out;
    out.station_id = series.station_id;
    out.variable = series.variable;
    out.start_date = year_month_day(window_start);
    out.values.assign(series.values.begin() + offset, series.values.end());
    out.filled_days = series.filled_days;  // gap bookkeeping refers to the full build
    return out;
}

Prepared prepare_all(const RunConfig& config) {
    const auto policy = parse_fill_policy(config.fill_policy);
    if (!policy) {
        throw InvalidHyperparameter("unknown fill policy: " + config.fill_policy);
    }
    Prepared prepared;
    for (const CityEntry& city : config.cities) {
        std::vector<ObservationRecord> records;
        try {
            records = parse_cdo_csv(city.csv);
        } catch (const std::exception& e) {
            prepared.failures.push_back({city.name, "", city.csv, e.what()});
            continue;
        }
        for (const Variable variable : config.variables) {
            try {
                PreparedSeries ps;
                ps.city = city.name;
                ps.variable = variable;
                ps.rows_parsed = records.size();
                ps.full = trim_to_window(build_series(records, variable, *policy),
                                         config.years_window);
                ps.split = train_test_split(ps.full, config.train_fraction);
                prepared.series.push_back(std::move(ps));
            } catch (const std::exception& e) {
                prepared.failures.push_back(
                    {city.name, variable_name(variable), city.csv, e.what()});
            }
        }
    }
    return prepared;
}

std::string artifact_path(const RunConfig& config, const PreparedSeries& ps,
                          const std::string& model) {
    return config.output_dir + "/" + city_slug(ps.city) + "_" +
           to_lower(variable_name(ps.variable)) + "_" + model + ".json";
}

// ---------------------------------------------------------------------------
// Model fitting cells
// ---------------------------------------------------------------------------

struct FitProduct {
    Json artifact;               // model_io schema, ready to save
    Json details;                // summary fields for manifests and stdout
    std::vector<double> forecast;  // horizon steps past the train split
};

std::vector<std::string> default_gp_candidates(double span_days) {
    // The GP standardizes inputs to [0,1] over its train span, so the annual
    // period and all length scales are expressed in span units.
    const double annual = 365.25 / std::max(span_days, 1.0);
    std::vector<KernelSpec> specs;
    specs.push_back(KernelSpec{{NoiseKernel(0.5), PeriodicKernel(1.0, 1.0, annual),
                                RbfKernel(2.0, 1.0)}});
    specs.push_back(KernelSpec{{NoiseKernel(0.5), PeriodicKernel(0.5, 1.0, annual),
                                RbfKernel(0.5, 1.0)}});
    specs.push_back(KernelSpec{{NoiseKernel(0.3), RbfKernel(0.25, 1.0)}});
    specs.push_back(KernelSpec{{NoiseKernel(1.0), RbfKernel(1.0, 1.0)}});
    std::vector<std::string> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) out.push_back(kernel_to_string(spec));
    return out;
}

FitProduct fit_gp_cell(const PreparedSeries& ps, const RunConfig& config, std::size_t horizon) {
    const std::vector<double>& train = ps.split.train.values;
    const std::size_t n_train = train.size();
    const std::size_t sub = std::min(config.gp.max_train, n_train);
    if (sub < 10) throw InsufficientData("GP needs at least 10 training points");
    const std::size_t first = n_train - sub;

    std::vector<double> inputs(sub);
    std::vector<double> targets(sub);
    for (std::size_t i = 0; i < sub; ++i) {
        inputs[i] = static_cast<double>(first + i);  // absolute day index
        targets[i] = train[first + i];
    }

    // Kernel selection: fit candidates on the first 80% of the subsample and
    // rank by RMSE on the held-back tail, then refit the winner on all of it.
    const std::size_t sel = sub * 8 / 10;
    const std::vector<double> sel_in(inputs.begin(), inputs.begin() + sel);
    const std::vector<double> sel_tg(targets.begin(), targets.begin() + sel);
    const std::vector<double> val_in(inputs.begin() + sel, inputs.end());
    const std::vector<double> val_tg(targets.begin() + sel, targets.end());

    std::vector<std::string> sel_candidates = config.gp.kernels;
    std::vector<std::string> fit_candidates = config.gp.kernels;
    if (sel_candidates.empty()) {
        // Derived defaults carry a span-dependent period, so the selection
        // fits (shorter span) get their own correctly scaled copies.
        sel_candidates = default_gp_candidates(sel_in.back() - sel_in.front());
        fit_candidates = default_gp_candidates(inputs.back() - inputs.front());
    }

    const auto trials = kernel_grid_trial(sel_in, sel_tg, val_in, val_tg, sel_candidates);
    Json candidate_rows = Json::array();
    std::string winner;
    double winner_rmse = 0.0;
    for (const KernelTrial& trial : trials) {
        Json row;
        row["kernel"] = trial.kernel;
        row["ok"] = trial.ok;
        if (trial.ok) {
            row["rmse"] = trial.rmse;
        } else {
            row["error"] = trial.error;
        }
        candidate_rows.push_back(std::move(row));
        if (winner.empty() && trial.ok) {
            // Trials are sorted ok-first by RMSE; map the winning selection
            // string back to its full-span twin.
            for (std::size_t c = 0; c < sel_candidates.size(); ++c) {
                if (sel_candidates[c] == trial.kernel) {
                    winner = fit_candidates[c];
                    break;
                }
            }
            winner_rmse = trial.rmse;
        }
    }
    if (winner.empty()) {
        throw AllFitsFailed("every kernel candidate failed; first reason: " +
                            (trials.empty() ? std::string("no candidates") : trials.front().error));
    }

    const GpPosterior posterior = fit_gp(parse_kernel(winner), inputs, targets);

    FitProduct product;
    GpArtifact artifact{winner, inputs, targets};
    product.artifact = gp_to_json(artifact);
    product.details["kernel"] = winner;
    product.details["selection_rmse"] = winner_rmse;
    product.details["train_points"] = sub;
    product.details["candidates"] = std::move(candidate_rows);
    if (horizon > 0) {
        std::vector<double> queries(horizon);
        for (std::size_t i = 0; i < horizon; ++i) {
            queries[i] = static_cast<double>(n_train + i);
        }
        product.forecast = predict_gp(posterior, queries).means;
    }
    return product;
}

FitProduct fit_cell(const std::string& model, const PreparedSeries& ps, const RunConfig& config,
                    std::size_t horizon) {
    FitProduct product;
    const std::vector<double>& train = ps.split.train.values;
    if (model == "arima") {
        ArimaModel fitted;
        if (config.arima.auto_order) {
            const OrderSearchResult search =
                select_order(train, config.arima.max_p, config.arima.d, Criterion::Bic);
            fitted = search.model;
        } else {
            fitted = fit_arima(train, {config.arima.p, config.arima.d, config.arima.q});
        }
        product.artifact = arima_to_json(fitted);
        product.details["p"] = fitted.spec.p;
        product.details["d"] = fitted.spec.d;
        product.details["q"] = fitted.spec.q;
        product.details["aic"] = fitted.fit.aic;
        product.details["bic"] = fitted.fit.bic;
        if (horizon > 0) product.forecast = forecast_arima(fitted, horizon);
    } else if (model == "ets") {
        const HoltWintersFit fitted =
            fit_holt_winters(train, config.ets.period, config.ets.trend);
        product.artifact = ets_to_json(fitted);
        product.details["alpha"] = fitted.params.alpha;
        product.details["beta"] = fitted.params.beta;
        product.details["gamma"] = fitted.params.gamma;
        product.details["period"] = fitted.params.period;
        product.details["trend"] = fitted.params.trend_enabled;
        product.details["sse"] = fitted.sse;
        if (horizon > 0) product.forecast = forecast_ets(fitted.state, fitted.params, horizon);
    } else if (model == "mlp") {
        MlpConfig mlp_config;
        mlp_config.input_size = config.mlp.input_size;
        mlp_config.hidden_size = config.mlp.hidden_size;
        mlp_config.dropout_rate = config.mlp.dropout;
        mlp_config.epochs = config.mlp.epochs;
        mlp_config.batch_size = config.mlp.batch_size;
        mlp_config.learning_rate = config.mlp.learning_rate;
        mlp_config.seed = cell_seed(config, ps.city, ps.variable, "mlp");
        const MlpTrainResult trained = train_mlp(train, mlp_config);
        MlpArtifact artifact;
        artifact.config = mlp_config;
        artifact.params = trained.params;
        artifact.standardizer = trained.standardizer;
        artifact.recent.assign(train.end() - static_cast<long>(mlp_config.input_size),
                               train.end());
        artifact.final_loss = trained.loss_history.back();
        product.artifact = mlp_to_json(artifact);
        product.details["final_loss"] = artifact.final_loss;
        product.details["epochs"] = mlp_config.epochs;
        product.details["seed"] = mlp_config.seed;
        if (horizon > 0) {
            product.forecast =
                forecast_mlp(artifact.params, artifact.standardizer, artifact.recent, horizon);
        }
    } else if (model == "gp") {
        product = fit_gp_cell(ps, config, horizon);
    } else {
        throw InvalidHyperparameter("unknown model: " + model);
    }
    return product;
}

std::string details_line(const std::string& model, const Json& details) {
    std::ostringstream out;
    if (model == "arima") {
        out << "order (" << details["p"].get<std::size_t>() << ","
            << details["d"].get<std::size_t>() << "," << details["q"].get<std::size_t>()
            << "), bic " << fmt4(details["bic"].get<double>());
    } else if (model == "ets") {
        out << "alpha " << fmt4(details["alpha"].get<double>()) << ", gamma "
            << fmt4(details["gamma"].get<double>()) << ", sse "
            << fmt4(details["sse"].get<double>());
    } else if (model == "mlp") {
        out << "final loss " << fmt4(details["final_loss"].get<double>());
    } else if (model == "gp") {
        out << "kernel " << details["kernel"].get<std::string>() << ", selection rmse "
            << fmt4(details["selection_rmse"].get<double>());
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateFlags {
    std::string out;
    std::size_t length = 7305;
    std::string start = "2003-01-01";
    double slope = 0.05;
    double noise_std = 2.0;
    double amplitude = 4.0;
    double period = 365.25;
    double ar_phi = 0.6;
    double tmax_base = 60.0;
    double tmin_base = 45.0;
    std::string station_id = "SYNTH0001";
    std::string station_name = "SYNTH CITY, TX US";
};

int cmd_generate(const RunConfig& config, const GenerateFlags& flags) {
    SyntheticCityConfig city;
    city.start_date = parse_date_or_throw(flags.start);
    city.length = flags.length;
    city.tmax_base = flags.tmax_base;
    city.tmin_base = flags.tmin_base;
    city.amplitude = flags.amplitude;
    city.period = flags.period;
    city.ar_phi = flags.ar_phi;
    city.noise_std = flags.noise_std;
    city.slope = flags.slope;
    city.seed = config.seed;
    city.station_id = flags.station_id;
    city.station_name = flags.station_name;
    const std::string path =
        flags.out.empty() ? config.output_dir + "/synthcity.csv" : flags.out;
    write_text(path, synthetic_city_csv(city));
    std::printf("wrote %s: %zu days x 2 variables, slope %s degF/yr, seed %llu\n", path.c_str(),
                city.length, fmt4(city.slope).c_str(),
                static_cast<unsigned long long>(city.seed));
    return 0;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

std::string series_csv(const TimeSeries& series) {
    std::string out = "date,value\n";
    char line[64];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(line, sizeof(line), "%s,%.4f\n", format_date(series.date_at(i)).c_str(),
                      series.values[i]);
        out += line;
    }
    return out;
}

std::string split_csv(const DatasetSplit& split) {
    std::string out = "date,value,set\n";
    char line[72];
    const auto append = [&](const TimeSeries& part, const char* label) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            std::snprintf(line, sizeof(line), "%s,%.4f,%s\n",
                          format_date(part.date_at(i)).c_str(), part.values[i], label);
            out += line;
        }
    };
    append(split.train, "train");
    append(split.test, "test");
    return out;
}

int cmd_ingest(const RunConfig& config) {
    const Prepared prepared = prepare_all(config);

    Json manifest;
    manifest["fill_policy"] = config.fill_policy;
    manifest["years_window"] = config.years_window;
    manifest["train_fraction"] = config.train_fraction;
    Json cities = Json::array();
    for (const CityEntry& city : config.cities) {
        Json entry;
        entry["name"] = city.name;
        entry["csv"] = city.csv;
        bool parse_failed = false;
        for (const PrepFailure& failure : prepared.failures) {
            if (failure.city == city.name && failure.variable.empty()) {
                entry["ok"] = false;
                entry["error"] = failure.error;
                parse_failed = true;
            }
        }
        if (parse_failed) {
            cities.push_back(std::move(entry));
            continue;
        }
        entry["ok"] = true;
        Json variables = Json::array();
        for (const Variable variable : config.variables) {
            Json row;
            row["variable"] = variable_name(variable);
            bool found = false;
            for (const PreparedSeries& ps : prepared.series) {
                if (ps.city != city.name || ps.variable != variable) continue;
                found = true;
                entry["rows_parsed"] = ps.rows_parsed;
                row["ok"] = true;
                row["window_start"] = format_date(ps.full.start_date);
                row["window_end"] = format_date(ps.full.end_date());
                row["days"] = ps.full.size();
                row["filled_days"] = ps.full.filled_days;
                row["train_days"] = ps.split.train.size();
                row["test_days"] = ps.split.test.size();
                const std::string stem = config.output_dir + "/" + city_slug(city.name) + "_" +
                                         to_lower(variable_name(variable));
                write_text(stem + "_series.csv", series_csv(ps.full));
                write_text(stem + "_split.csv", split_csv(ps.split));
            }
            if (!found) {
                for (const PrepFailure& failure : prepared.failures) {
                    if (failure.city == city.name &&
                        failure.variable == variable_name(variable)) {
                        row["ok"] = false;
                        row["error"] = failure.error;
                    }
                }
            }
            variables.push_back(std::move(row));
        }
        entry["variables"] = std::move(variables);
        cities.push_back(std::move(entry));
    }
    manifest["cities"] = std::move(cities);
    manifest["series_written"] = prepared.series.size();
    manifest["failures"] = prepared.failures.size();
    save_json(config.output_dir + "/manifest.json", manifest);

    std::printf("ingested %zu series (%zu failures) -> %s/manifest.json\n",
                prepared.series.size(), prepared.failures.size(), config.output_dir.c_str());
    for (const PrepFailure& failure : prepared.failures) {
        std::fprintf(stderr, "failed: %s %s (%s): %s\n", failure.city.c_str(),
                     failure.variable.c_str(), failure.csv.c_str(), failure.error.c_str());
    }
    return prepared.failures.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// diagnose
// ---------------------------------------------------------------------------

int cmd_diagnose(const RunConfig& config) {
    const Prepared prepared = prepare_all(config);

    for (const PreparedSeries& ps : prepared.series) {
        const std::vector<double>& values = ps.full.values;
        const std::size_t max_lag = std::min<std::size_t>(40, values.size() / 2);
        const CorrelogramResult acf_result = acf(values, max_lag);
        const CorrelogramResult pacf_result = pacf(values, max_lag);
        const AdfResult adf_result = adf_test(values, 20);

        Json doc;
        doc["city"] = ps.city;
        doc["variable"] = variable_name(ps.variable);
        doc["n"] = values.size();
        doc["acf"] = {{"max_lag", acf_result.max_lag},
                      {"values", acf_result.values},
                      {"confidence_band", acf_result.confidence_band}};
        doc["pacf"] = {{"max_lag", pacf_result.max_lag},
                       {"values", pacf_result.values},
                       {"confidence_band", pacf_result.confidence_band}};
        doc["adf"] = {{"statistic", adf_result.statistic},
                      {"lags_used", adf_result.lags_used},
                      {"crit_1pct", adf_result.crit_1pct},
                      {"crit_5pct", adf_result.crit_5pct},
                      {"crit_10pct", adf_result.crit_10pct},
                      {"stationary_at_5pct", adf_result.stationary_at_5pct}};
        const std::string stem = config.output_dir + "/" + city_slug(ps.city) + "_" +
                                 to_lower(variable_name(ps.variable));
        save_json(stem + "_diagnostics.json", doc);

        if (config.format == "json") {
            std::printf("%s\n", doc.dump(2).c_str());
        } else if (config.format == "csv") {
            std::printf("%s,%s,%s,%zu,%s,%s,%s\n", ps.city.c_str(),
                        variable_name(ps.variable), fmt4(adf_result.statistic).c_str(),
                        adf_result.lags_used, adf_result.stationary_at_5pct ? "yes" : "no",
                        fmt4(acf_result.values[std::min<std::size_t>(1, max_lag)]).c_str(),
                        fmt4(pacf_result.values[std::min<std::size_t>(1, max_lag)]).c_str());
        } else {
            std::printf("%s %s: ADF %s (5%% crit %s, lags %zu) -> %s; ACF[1] %s, PACF[1] %s\n",
                        ps.city.c_str(), variable_name(ps.variable),
                        fmt4(adf_result.statistic).c_str(), fmt4(adf_result.crit_5pct).c_str(),
                        adf_result.lags_used,
                        adf_result.stationary_at_5pct ? "stationary" : "non-stationary",
                        fmt4(acf_result.values[std::min<std::size_t>(1, max_lag)]).c_str(),
                        fmt4(pacf_result.values[std::min<std::size_t>(1, max_lag)]).c_str());
        }
    }
    for (const PrepFailure& failure : prepared.failures) {
        std::fprintf(stderr, "failed: %s %s (%s): %s\n", failure.city.c_str(),
                     failure.variable.c_str(), failure.csv.c_str(), failure.error.c_str());
    }
    return prepared.failures.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

int cmd_fit(const RunConfig& config, const std::string& model) {
    const Prepared prepared = prepare_all(config);

    struct CellOutcome {
        bool ok = false;
        std::string message;  // details line or failure reason
        Json artifact;
    };
    std::vector<CellOutcome> outcomes(prepared.series.size());
    parallel_for(prepared.series.size(), config.jobs, [&](std::size_t i) {
        try {
            FitProduct product = fit_cell(model, prepared.series[i], config, 0);
            outcomes[i].ok = true;
            outcomes[i].message = details_line(model, product.details);
            outcomes[i].artifact = std::move(product.artifact);
        } catch (const std::exception& e) {
            outcomes[i].message = e.what();
        }
    });

    std::size_t failures = prepared.failures.size();
    for (std::size_t i = 0; i < prepared.series.size(); ++i) {
        const PreparedSeries& ps = prepared.series[i];
        if (outcomes[i].ok) {
            const std::string path = artifact_path(config, ps, model);
            save_json(path, outcomes[i].artifact);
            std::printf("fit %s %s %s: %s -> %s\n", model.c_str(), ps.city.c_str(),
                        variable_name(ps.variable), outcomes[i].message.c_str(), path.c_str());
        } else {
            ++failures;
            std::printf("fit %s %s %s: FAILED (%s)\n", model.c_str(), ps.city.c_str(),
                        variable_name(ps.variable), outcomes[i].message.c_str());
        }
    }
    for (const PrepFailure& failure : prepared.failures) {
        std::fprintf(stderr, "failed: %s %s (%s): %s\n", failure.city.c_str(),
                     failure.variable.c_str(), failure.csv.c_str(), failure.error.c_str());
    }
    return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// forecast
// ---------------------------------------------------------------------------

int cmd_forecast(const std::string& model_file, std::size_t horizon, const std::string& out) {
    if (horizon < 1) throw InvalidHyperparameter("forecast horizon must be >= 1");
    const Json doc = load_json(model_file);
    const std::string type = model_type(doc);

    std::vector<double> values;
    std::vector<double> variances;  // GP only
    if (type == "arima") {
        values = forecast_arima(arima_from_json(doc), horizon);
    } else if (type == "ets") {
        const HoltWintersFit fit = ets_from_json(doc);
        values = forecast_ets(fit.state, fit.params, horizon);
    } else if (type == "mlp") {
        const MlpArtifact artifact = mlp_from_json(doc);
        values = forecast_mlp(artifact.params, artifact.standardizer, artifact.recent, horizon);
    } else {
        const GpArtifact artifact = gp_from_json(doc);
        const GpPosterior posterior =
            fit_gp(parse_kernel(artifact.kernel), artifact.train_inputs, artifact.train_targets);
        std::vector<double> queries(horizon);
        for (std::size_t i = 0; i < horizon; ++i) {
            queries[i] = artifact.train_inputs.back() + 1.0 + static_cast<double>(i);
        }
        const GpPrediction prediction = predict_gp(posterior, queries);
        values = prediction.means;
        variances = prediction.variances;
    }

    std::string csv = variances.empty() ? "step,value\n" : "step,value,variance\n";
    char line[80];
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (variances.empty()) {
            std::snprintf(line, sizeof(line), "%zu,%.4f\n", i + 1, values[i]);
        } else {
            std::snprintf(line, sizeof(line), "%zu,%.4f,%.4f\n", i + 1, values[i],
                          variances[i]);
        }
        csv += line;
    }
    if (out.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_text(out, csv);
        std::printf("wrote %s: %zu steps from %s model %s\n", out.c_str(), horizon,
                    type.c_str(), model_file.c_str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

std::vector<std::string> split_plain_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '"' && c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

std::vector<double> read_value_column(const std::string& path, const std::string& set_filter) {
    std::ifstream in(path);
    if (!in) throw EmptyFile("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw EmptyFile("no header in " + path);
    const auto header = split_plain_csv(line);
    long value_col = -1;
    long set_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = to_lower(header[i]);
        if (name == "value") value_col = static_cast<long>(i);
        if (name == "set" || name == "kind") set_col = static_cast<long>(i);
    }
    if (value_col < 0) value_col = header.size() > 1 ? 1 : 0;
    if (!set_filter.empty() && set_col < 0) {
        throw MissingColumn("no set/kind column in " + path);
    }
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_plain_csv(line);
        if (value_col >= static_cast<long>(fields.size())) {
            throw MalformedRow(line_no, "too few fields");
        }
        if (!set_filter.empty() && fields[static_cast<std::size_t>(set_col)] != set_filter) {
            continue;
        }
        const std::string& cell = fields[static_cast<std::size_t>(value_col)];
        double value = 0.0;
        const auto result = std::from_chars(cell.data(), cell.data() + cell.size(), value);
        if (result.ec != std::errc() || result.ptr != cell.data() + cell.size()) {
            throw MalformedRow(line_no, "unparseable value \"" + cell + "\"");
        }
        values.push_back(value);
    }
    return values;
}

int cmd_evaluate(const RunConfig& config, const std::string& forecast_path,
                 const std::string& actual_path, const std::string& set_filter) {
    const std::vector<double> predicted = read_value_column(forecast_path, "");
    const std::vector<double> actual = read_value_column(actual_path, set_filter);
    const double rmse_value = rmse(actual, predicted);
    const double mae_value = mae(actual, predicted);
    if (config.format == "json") {
        Json doc;
        doc["rmse"] = rmse_value;
        doc["mae"] = mae_value;
        doc["n"] = actual.size();
        std::printf("%s\n", doc.dump(2).c_str());
    } else if (config.format == "csv") {
        std::printf("metric,value\nrmse,%s\nmae,%s\nn,%zu\n", fmt4(rmse_value).c_str(),
                    fmt4(mae_value).c_str(), actual.size());
    } else {
        std::printf("RMSE  %s\nMAE   %s\nn     %zu\n", fmt4(rmse_value).c_str(),
                    fmt4(mae_value).c_str(), actual.size());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// benchmark
// ---------------------------------------------------------------------------

struct BenchmarkCell {
    std::size_t series_index = 0;
    std::string model;
    EvalReport report;
    Json details;
};

std::string pivot_tables(const RunConfig& config, const std::vector<BenchmarkCell>& cells,
                         const std::vector<PreparedSeries>& series) {
    std::ostringstream out;
    for (const Variable variable : config.variables) {
        // Column set: cities that have a prepared series for this variable.
        std::vector<std::string> columns;
        for (const PreparedSeries& ps : series) {
            if (ps.variable == variable) columns.push_back(ps.city);
        }
        if (columns.empty()) continue;
        std::vector<std::size_t> widths;
        widths.reserve(columns.size());
        for (const std::string& city : columns) {
            widths.push_back(std::max<std::size_t>(city.size(), 10));
        }

        out << "== " << variable_name(variable) << " ==\n";
        out << "model  metric";
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << "  " << std::string(widths[c] - columns[c].size(), ' ') << columns[c];
        }
        out << '\n';
        for (const char* model : kModelNames) {
            std::string label = model;
            std::transform(label.begin(), label.end(), label.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
            for (const char* metric : {"RMSE", "MAE"}) {
                const std::string metric_text(metric);
                out << (metric_text == "RMSE" ? label + std::string(7 - label.size(), ' ')
                                              : std::string(7, ' '));
                out << metric_text << std::string(6 - metric_text.size(), ' ');
                for (std::size_t c = 0; c < columns.size(); ++c) {
                    std::string cell_text = "--";
                    for (const BenchmarkCell& cell : cells) {
                        const PreparedSeries& ps = series[cell.series_index];
                        if (ps.variable != variable || ps.city != columns[c] ||
                            cell.model != model) {
                            continue;
                        }
                        if (cell.report.ok) {
                            cell_text = fmt4(metric_text == "RMSE" ? cell.report.rmse
                                                                   : cell.report.mae);
                        }
                    }
                    out << "  " << std::string(widths[c] - cell_text.size(), ' ') << cell_text;
                }
                out << '\n';
            }
        }
        out << '\n';
    }
    return out.str();
}

int cmd_benchmark(const RunConfig& config) {
    const Prepared prepared = prepare_all(config);

    std::vector<BenchmarkCell> cells;
    for (std::size_t s = 0; s < prepared.series.size(); ++s) {
        for (const char* model : kModelNames) {
            BenchmarkCell cell;
            cell.series_index = s;
            cell.model = model;
            cells.push_back(std::move(cell));
        }
    }

    parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
        BenchmarkCell& cell = cells[i];
        const PreparedSeries& ps = prepared.series[cell.series_index];
        const std::vector<double>& test = ps.split.test.values;
        try {
            FitProduct product = fit_cell(cell.model, ps, config, test.size());
            cell.report = evaluate_forecast(cell.model, ps.city, ps.variable, test,
                                            product.forecast);
            cell.details = std::move(product.details);
        } catch (const std::exception& e) {
            cell.report.model_name = cell.model;
            cell.report.city = ps.city;
            cell.report.variable = ps.variable;
            cell.report.ok = false;
            cell.report.n = test.size();
            cell.report.failure = e.what();
        }
    });

    std::vector<EvalReport> reports;
    reports.reserve(cells.size());
    for (const BenchmarkCell& cell : cells) reports.push_back(cell.report);
    const ModelComparison comparison = compare_models(reports);

    const std::string tables = pivot_tables(config, cells, prepared.series);
    const std::string ranking = comparison_table(comparison);
    write_text(config.output_dir + "/benchmark_table.txt", tables);
    write_text(config.output_dir + "/ranking.txt", ranking);
    write_text(config.output_dir + "/benchmark.csv", comparison_csv(comparison));

    Json doc;
    doc["seed"] = config.seed;
    doc["years_window"] = config.years_window;
    doc["train_fraction"] = config.train_fraction;
    Json city_names = Json::array();
    for (const CityEntry& city : config.cities) city_names.push_back(city.name);
    doc["cities"] = std::move(city_names);
    Json variable_names = Json::array();
    for (const Variable variable : config.variables) {
        variable_names.push_back(variable_name(variable));
    }
    doc["variables"] = std::move(variable_names);
    Json cell_rows = Json::array();
    for (const BenchmarkCell& cell : cells) {
        const PreparedSeries& ps = prepared.series[cell.series_index];
        Json row;
        row["city"] = ps.city;
        row["variable"] = variable_name(ps.variable);
        row["model"] = cell.model;
        row["ok"] = cell.report.ok;
        if (cell.report.ok) {
            row["rmse"] = cell.report.rmse;
            row["mae"] = cell.report.mae;
        } else {
            row["rmse"] = nullptr;
            row["mae"] = nullptr;
            row["failure"] = cell.report.failure;
        }
        row["n"] = cell.report.n;
        if (!cell.details.is_null()) row["details"] = cell.details;
        cell_rows.push_back(std::move(row));
    }
    doc["cells"] = std::move(cell_rows);
    doc["comparison"] = Json::parse(comparison_json(comparison));
    Json ingest_failures = Json::array();
    for (const PrepFailure& failure : prepared.failures) {
        ingest_failures.push_back({{"city", failure.city},
                                   {"variable", failure.variable},
                                   {"csv", failure.csv},
                                   {"error", failure.error}});
    }
    doc["ingest_failures"] = std::move(ingest_failures);
    save_json(config.output_dir + "/benchmark.json", doc);

    if (config.format == "json") {
        std::printf("%s\n", doc.dump(2).c_str());
    } else if (config.format == "csv") {
        std::fputs(comparison_csv(comparison).c_str(), stdout);
    } else {
        std::fputs(tables.c_str(), stdout);
        std::fputs(ranking.c_str(), stdout);
    }
    std::printf("benchmark outputs in %s\n", config.output_dir.c_str());
    return prepared.failures.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// project
// ---------------------------------------------------------------------------

int cmd_project(const RunConfig& config, int to_year, bool annual_mean) {
    const Prepared prepared = prepare_all(config);
    using namespace std::chrono;

    struct ProjectOutcome {
        bool ok = false;
        std::string error;
        ProjectionResult projection;
        TrendFit reported;       // daily or annual-mean fit per the flag
        std::size_t horizon_days = 0;
    };
    std::vector<ProjectOutcome> outcomes(prepared.series.size());

    parallel_for(prepared.series.size(), config.jobs, [&](std::size_t i) {
        const PreparedSeries& ps = prepared.series[i];
        ProjectOutcome& outcome = outcomes[i];
        try {
            const sys_days end{ps.full.end_date()};
            const sys_days target{year{to_year} / 12 / 31};
            const auto horizon = (target - end).count();
            if (horizon < 1) {
                throw InvalidHyperparameter("--to-year must lie beyond the observed span");
            }
            outcome.horizon_days = static_cast<std::size_t>(horizon);

            // The projector must be trained on the same series it extends, so
            // the benchmark's split-trained artifact is not reused here.
            MlpConfig mlp_config;
            mlp_config.input_size = config.mlp.input_size;
            mlp_config.hidden_size = config.mlp.hidden_size;
            mlp_config.dropout_rate = config.mlp.dropout;
            mlp_config.epochs = config.mlp.epochs;
            mlp_config.batch_size = config.mlp.batch_size;
            mlp_config.learning_rate = config.mlp.learning_rate;
            mlp_config.seed = cell_seed(config, ps.city, ps.variable, "mlp");
            const MlpTrainResult trained = train_mlp(ps.full.values, mlp_config);

            outcome.projection = project_days(ps.full, trained.params, trained.standardizer,
                                              outcome.horizon_days);
            if (annual_mean) {
                // Aggregate the combined series to calendar-year means.
                std::map<int, std::pair<double, std::size_t>> years_acc;
                for (const ProjectionPoint& point : outcome.projection.points) {
                    auto& acc = years_acc[static_cast<int>(point.date.year())];
                    acc.first += point.value;
                    acc.second += 1;
                }
                std::vector<double> times;
                std::vector<double> means;
                const int first_year = years_acc.begin()->first;
                for (const auto& [year_number, acc] : years_acc) {
                    times.push_back(static_cast<double>(year_number - first_year));
                    means.push_back(acc.first / static_cast<double>(acc.second));
                }
                outcome.reported = fit_trend_xy(times, means);
            } else {
                outcome.reported = outcome.projection.trend;
            }
            outcome.ok = true;
        } catch (const std::exception& e) {
            outcome.error = e.what();
        }
    });

    std::string summary;
    std::size_t failures = prepared.failures.size();
    for (std::size_t i = 0; i < prepared.series.size(); ++i) {
        const PreparedSeries& ps = prepared.series[i];
        const ProjectOutcome& outcome = outcomes[i];
        char line[256];
        if (!outcome.ok) {
            ++failures;
            std::snprintf(line, sizeof(line), "%s %s: FAILED (%s)\n", ps.city.c_str(),
                          variable_name(ps.variable), outcome.error.c_str());
            summary += line;
            continue;
        }
        const TrendFit& fit = outcome.reported;
        std::snprintf(line, sizeof(line),
                      "%s %s: %s | one-sided p = %.6g | beta1 > 0 at 5%%: %s\n",
                      ps.city.c_str(), variable_name(ps.variable),
                      trend_equation(fit).c_str(), fit.p_value_one_sided,
                      fit.reject_at_5pct ? "yes" : "no");
        summary += line;

        const std::string stem = config.output_dir + "/" + city_slug(ps.city) + "_" +
                                 to_lower(variable_name(ps.variable));
        write_text(stem + "_projection.csv", projection_csv(outcome.projection));

        Json doc;
        doc["city"] = ps.city;
        doc["variable"] = variable_name(ps.variable);
        doc["granularity"] = annual_mean ? "annual_mean" : "daily";
        doc["to_year"] = to_year;
        doc["horizon_days"] = outcome.horizon_days;
        doc["observed_days"] = ps.full.size();
        doc["combined_days"] = outcome.projection.points.size();
        doc["beta0"] = fit.beta0;
        doc["beta1"] = fit.beta1;
        doc["se_beta1"] = fit.se_beta1;
        doc["t_statistic"] = fit.t_statistic;
        doc["p_value_one_sided"] = fit.p_value_one_sided;
        doc["n"] = fit.n;
        doc["reject_at_5pct"] = fit.reject_at_5pct;
        doc["equation"] = trend_equation(fit);
        save_json(stem + "_trend.json", doc);
    }
    write_text(config.output_dir + "/projection_summary.txt", summary);
    std::fputs(summary.c_str(), stdout);
    for (const PrepFailure& failure : prepared.failures) {
        std::fprintf(stderr, "failed: %s %s (%s): %s\n", failure.city.c_str(),
                     failure.variable.c_str(), failure.csv.c_str(), failure.error.c_str());
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public helpers
// ---------------------------------------------------------------------------

RunConfig load_run_config(const std::string& path) {
    return config_from_json(load_json(path));
}

void validate_config(const RunConfig& config) {
    if (config.cities.empty()) throw InvalidHyperparameter("config: at least one city required");
    if (config.variables.empty()) {
        throw InvalidHyperparameter("config: at least one variable required");
    }
    if (!(config.train_fraction > 0.0) || !(config.train_fraction < 1.0)) {
        throw InvalidHyperparameter("config: train_fraction must lie in (0, 1)");
    }
    if (config.years_window < 1) {
        throw InvalidHyperparameter("config: years_window must be >= 1");
    }
    if (config.jobs < 1) throw InvalidHyperparameter("config: jobs must be >= 1");
    if (config.format != "table" && config.format != "csv" && config.format != "json") {
        throw InvalidHyperparameter("config: format must be table, csv, or json");
    }
    if (!parse_fill_policy(config.fill_policy)) {
        throw InvalidHyperparameter("config: unknown fill policy " + config.fill_policy);
    }
    for (const CityEntry& city : config.cities) {
        if (!std::filesystem::exists(city.csv)) {
            throw EmptyFile("config: csv for " + city.name + " not found: " + city.csv);
        }
    }
}

std::string city_slug(const std::string& name) {
    std::string slug;
    slug.reserve(name.size());
    bool last_was_separator = true;
    for (char c : name) {
        const unsigned char uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc)) {
            slug += static_cast<char>(std::tolower(uc));
            last_was_separator = false;
        } else if (!last_was_separator) {
            slug += '_';
            last_was_separator = true;
        }
    }
    while (!slug.empty() && slug.back() == '_') slug.pop_back();
    return slug.empty() ? "unnamed" : slug;
}

std::uint64_t cell_seed(const RunConfig& config, const std::string& city, Variable variable,
                        const std::string& model) {
    return derive_seed(config.seed,
                       city + "/" + variable_name(variable) + "/" + model);
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"tempcast: daily-temperature forecasting toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // let global flags appear after the subcommand name

    std::string config_path;
    std::uint64_t seed_flag = 0;
    std::string output_dir_flag;
    std::size_t jobs_flag = 1;
    std::string format_flag;
    auto* opt_config = app.add_option("--config", config_path, "JSON run configuration file");
    auto* opt_seed = app.add_option("--seed", seed_flag, "root random seed");
    auto* opt_output = app.add_option("--output-dir", output_dir_flag, "directory for outputs");
    auto* opt_jobs =
        app.add_option("--jobs", jobs_flag, "parallel worker cap")->check(CLI::Range(1, 64));
    auto* opt_format = app.add_option("--format", format_flag, "stdout rendering")
                           ->check(CLI::IsMember({"table", "csv", "json"}));

    GenerateFlags generate_flags;
    auto* sub_generate = app.add_subcommand("generate", "emit a synthetic-city CDO-schema CSV");
    sub_generate->add_option("--out", generate_flags.out, "output CSV path");
    sub_generate->add_option("--length", generate_flags.length, "number of days");
    sub_generate->add_option("--start", generate_flags.start, "first date (YYYY-MM-DD)");
    sub_generate->add_option("--slope", generate_flags.slope, "trend, degF per year");
    sub_generate->add_option("--noise-std", generate_flags.noise_std, "AR(1) innovation std");
    sub_generate->add_option("--amplitude", generate_flags.amplitude, "seasonal amplitude");
    sub_generate->add_option("--period", generate_flags.period, "seasonal period, days");
    sub_generate->add_option("--ar-phi", generate_flags.ar_phi, "AR(1) coefficient");
    sub_generate->add_option("--tmax-base", generate_flags.tmax_base, "TMAX base level");
    sub_generate->add_option("--tmin-base", generate_flags.tmin_base, "TMIN base level");
    sub_generate->add_option("--station-id", generate_flags.station_id, "STATION field");
    sub_generate->add_option("--station-name", generate_flags.station_name, "NAME field");

    auto* sub_ingest = app.add_subcommand("ingest", "parse city CSVs into series and splits");
    auto* sub_diagnose = app.add_subcommand("diagnose", "ACF/PACF/ADF per series");

    std::string fit_model_name;
    auto* sub_fit = app.add_subcommand("fit", "fit one model family per series");
    sub_fit->add_option("model", fit_model_name, "arima, ets, mlp, or gp")
        ->required()
        ->check(CLI::IsMember({"arima", "ets", "mlp", "gp"}));

    std::string forecast_model_file;
    std::size_t forecast_horizon = 0;
    std::string forecast_out;
    auto* sub_forecast = app.add_subcommand("forecast", "forecast from a saved model artifact");
    sub_forecast->add_option("--model-file", forecast_model_file, "saved model JSON")
        ->required();
    sub_forecast->add_option("--horizon", forecast_horizon, "steps ahead")->required();
    sub_forecast->add_option("--out", forecast_out, "write CSV here instead of stdout");

    std::string evaluate_forecast_path;
    std::string evaluate_actual_path;
    std::string evaluate_set;
    auto* sub_evaluate = app.add_subcommand("evaluate", "RMSE/MAE of a forecast CSV");
    sub_evaluate->add_option("--forecast", evaluate_forecast_path, "forecast CSV")->required();
    sub_evaluate->add_option("--actual", evaluate_actual_path, "actuals CSV")->required();
    sub_evaluate->add_option("--set", evaluate_set,
                             "keep only rows whose set/kind column equals this");

    auto* sub_benchmark =
        app.add_subcommand("benchmark", "fit and score all four models per series");

    int project_to_year = 2030;
    bool project_annual = false;
    auto* sub_project = app.add_subcommand("project", "MLP projection plus the slope test");
    sub_project->add_option("--to-year", project_to_year, "project through Dec 31 of this year");
    sub_project->add_flag("--annual-mean", project_annual,
                          "test the trend on calendar-year means");

    std::vector<const char*> argv;
    argv.push_back("tempcast");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        Json config_doc = Json::object();
        if (opt_config->count() > 0) config_doc = load_json(config_path);
        RunConfig config = config_from_json(config_doc);
        if (opt_seed->count() > 0) config.seed = seed_flag;
        if (opt_output->count() > 0) {
            config.output_dir = output_dir_flag;
        } else if (!config_doc.contains("output_dir")) {
            if (const char* env = std::getenv("TEMPCAST_OUTPUT_DIR"); env != nullptr && *env) {
                config.output_dir = env;
            }
        }
        if (opt_jobs->count() > 0) config.jobs = jobs_flag;
        if (opt_format->count() > 0) config.format = format_flag;
        apply_default_city(config);

        if (*sub_generate) return cmd_generate(config, generate_flags);
        if (*sub_forecast) {
            return cmd_forecast(forecast_model_file, forecast_horizon, forecast_out);
        }
        if (*sub_evaluate) {
            return cmd_evaluate(config, evaluate_forecast_path, evaluate_actual_path,
                                evaluate_set);
        }
        validate_config(config);
        if (*sub_ingest) return cmd_ingest(config);
        if (*sub_diagnose) return cmd_diagnose(config);
        if (*sub_fit) return cmd_fit(config, fit_model_name);
        if (*sub_benchmark) return cmd_benchmark(config);
        if (*sub_project) return cmd_project(config, project_to_year, project_annual);
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace tempcast
