#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tempcast/series.hpp"

namespace tempcast {

struct CityEntry {
    std::string name;
    std::string csv;  // path as given; echoed verbatim in outputs
};

struct ArimaOptions {
    bool auto_order = true;   // BIC search over pure-AR orders 1..max_p
    std::size_t max_p = 5;
    std::size_t p = 2;        // fixed order used when auto_order is off
    std::size_t d = 0;
    std::size_t q = 0;
};

struct EtsOptions {
    std::size_t period = 365;
    bool trend = false;
};

struct MlpOptions {
    std::size_t input_size = 3;
    std::size_t hidden_size = 4;
    double dropout = 0.2;
    std::size_t epochs = 2000;
    std::size_t batch_size = 12;
    double learning_rate = 0.001;
};

struct GpOptions {
    // Candidate kernel descriptions for selection by held-out RMSE; when
    // empty, a default grid is derived from the training span (the annual
    // period expressed in the GP's scaled input units).
    std::vector<std::string> kernels;
    std::size_t max_train = 1000;  // GP trains on the most recent points only
};

/// One run's full configuration: defaults, overridden by the JSON config
/// file, overridden by command-line flags.
struct RunConfig {
    std::string data_dir = "data";
    std::vector<CityEntry> cities;  // empty -> data_dir/synthcity.csv
    std::vector<Variable> variables = {Variable::Tmax, Variable::Tmin};
    int years_window = 20;          // keep only this many trailing years
    double train_fraction = 0.8;
    std::string fill_policy = "linear";
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    std::size_t jobs = 1;
    std::string format = "table";   // stdout rendering: table, csv, or json
    ArimaOptions arima;
    EtsOptions ets;
    MlpOptions mlp;
    GpOptions gp;
};

/// Parse a JSON config file over the defaults. Unknown keys are rejected so
/// typos fail loudly. Throws EmptyFile, MalformedModelFile (invalid JSON),
/// InvalidHyperparameter (bad values).
RunConfig load_run_config(const std::string& path);

/// Check the invariants (at least one city and one variable, fractions in
/// range, referenced CSV paths exist). Throws InvalidHyperparameter or
/// EmptyFile naming the offender.
void validate_config(const RunConfig& config);

/// Lowercase file-name-safe identifier, e.g. "Synth City" -> "synth_city".
std::string city_slug(const std::string& name);

/// Root of all randomness for one (city, variable, model) cell; derived by
/// hashing the labels so adding a city never perturbs another's results.
std::uint64_t cell_seed(const RunConfig& config, const std::string& city, Variable variable,
                        const std::string& model);

/// Run one command line (without the program name), e.g.
/// {"benchmark", "--config", "run.json", "--jobs", "4"}. Returns the process
/// exit code: 0 success, 1 any hard failure, 2 usage errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace tempcast
