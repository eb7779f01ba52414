#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tempcast/arima.hpp"
#include "tempcast/ets.hpp"
#include "tempcast/mlp.hpp"
#include "tempcast/series.hpp"

namespace tempcast {

/// Key-order-preserving JSON document; field order is part of the on-disk
/// format so reruns stay byte-identical.
using Json = nlohmann::ordered_json;

/// Everything needed to resume forecasting with a trained network: the
/// weights, the target standardizer, and the last observed input window.
struct MlpArtifact {
    MlpConfig config;
    MlpParams params;
    Standardizer standardizer;
    std::vector<double> recent;  // last input_size observed values, raw scale
    double final_loss = 0.0;
};

/// A GP model persists as its kernel description plus the training sample;
/// loading refits the posterior, which reproduces it exactly (same inputs,
/// same kernel, same deterministic factorization).
struct GpArtifact {
    std::string kernel;
    std::vector<double> train_inputs;   // day indices
    std::vector<double> train_targets;  // deg F
};

Json arima_to_json(const ArimaModel& model);
ArimaModel arima_from_json(const Json& doc);

Json ets_to_json(const HoltWintersFit& fit);
HoltWintersFit ets_from_json(const Json& doc);

Json mlp_to_json(const MlpArtifact& artifact);
MlpArtifact mlp_from_json(const Json& doc);

Json gp_to_json(const GpArtifact& artifact);
GpArtifact gp_from_json(const Json& doc);

/// The "model" tag of a saved artifact: "arima", "ets", "mlp", or "gp".
/// Throws MalformedModelFile when the tag is missing or not one of those.
std::string model_type(const Json& doc);

/// Write doc as two-space-indented JSON with a trailing newline.
void save_json(const std::string& path, const Json& doc);

/// Parse a JSON file. Throws EmptyFile when unreadable, MalformedModelFile on
/// invalid JSON.
Json load_json(const std::string& path);

}  // namespace tempcast
