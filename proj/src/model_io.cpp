#include "tempcast/model_io.hpp"

#include <filesystem>
#include <fstream>
#include <utility>

#include "tempcast/errors.hpp"

namespace tempcast {
namespace {

const Json& require_field(const Json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw MalformedModelFile(std::string("missing field: ") + key);
    }
    return *it;
}

void require_tag(const Json& doc, const char* expected) {
    if (model_type(doc) != expected) {
        throw MalformedModelFile(std::string("expected a ") + expected + " artifact");
    }
}

template <typename T>
T field_as(const Json& doc, const char* key) {
    try {
        return require_field(doc, key).get<T>();
    } catch (const Json::exception& e) {
        throw MalformedModelFile(std::string("field ") + key + ": " + e.what());
    }
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& doc, const char* key) {
    const auto rows = field_as<std::vector<std::vector<double>>>(doc, key);
    if (rows.empty() || rows.front().empty()) {
        throw MalformedModelFile(std::string("field ") + key + ": empty matrix");
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (rows[i].size() != m.cols) {
            throw MalformedModelFile(std::string("field ") + key + ": ragged rows");
        }
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

std::string model_type(const Json& doc) {
    if (!doc.is_object() || !doc.contains("model") || !doc["model"].is_string()) {
        throw MalformedModelFile("artifact has no \"model\" tag");
    }
    const std::string tag = doc["model"].get<std::string>();
    if (tag != "arima" && tag != "ets" && tag != "mlp" && tag != "gp") {
        throw MalformedModelFile("unknown model type: " + tag);
    }
    return tag;
}

Json arima_to_json(const ArimaModel& model) {
    Json doc;
    doc["model"] = "arima";
    doc["spec"] = {{"p", model.spec.p}, {"d", model.spec.d}, {"q", model.spec.q}};
    doc["intercept"] = model.intercept;
    doc["ar_coeffs"] = model.ar_coeffs;
    doc["ma_coeffs"] = model.ma_coeffs;
    doc["residual_variance"] = model.residual_variance;
    doc["fit"] = {{"log_likelihood", model.fit.log_likelihood}, {"k", model.fit.k},
                  {"n", model.fit.n},                           {"aic", model.fit.aic},
                  {"aic_per_obs", model.fit.aic_per_obs},       {"bic", model.fit.bic}};
    doc["tail_values"] = model.tail_values;
    doc["tail_residuals"] = model.tail_residuals;
    doc["diff_seeds"] = model.diff_seeds;
    return doc;
}

ArimaModel arima_from_json(const Json& doc) {
    require_tag(doc, "arima");
    ArimaModel model;
    const Json& spec = require_field(doc, "spec");
    model.spec.p = field_as<std::size_t>(spec, "p");
    model.spec.d = field_as<std::size_t>(spec, "d");
    model.spec.q = field_as<std::size_t>(spec, "q");
    model.intercept = field_as<double>(doc, "intercept");
    model.ar_coeffs = field_as<std::vector<double>>(doc, "ar_coeffs");
    model.ma_coeffs = field_as<std::vector<double>>(doc, "ma_coeffs");
    model.residual_variance = field_as<double>(doc, "residual_variance");
    const Json& fit = require_field(doc, "fit");
    model.fit.log_likelihood = field_as<double>(fit, "log_likelihood");
    model.fit.k = field_as<std::size_t>(fit, "k");
    model.fit.n = field_as<std::size_t>(fit, "n");
    model.fit.aic = field_as<double>(fit, "aic");
    model.fit.aic_per_obs = field_as<double>(fit, "aic_per_obs");
    model.fit.bic = field_as<double>(fit, "bic");
    model.tail_values = field_as<std::vector<double>>(doc, "tail_values");
    model.tail_residuals = field_as<std::vector<double>>(doc, "tail_residuals");
    model.diff_seeds = field_as<std::vector<double>>(doc, "diff_seeds");
    if (model.ar_coeffs.size() != model.spec.p || model.ma_coeffs.size() != model.spec.q ||
        model.diff_seeds.size() != model.spec.d) {
        throw MalformedModelFile("coefficient counts disagree with the model order");
    }
    return model;
}

Json ets_to_json(const HoltWintersFit& fit) {
    Json doc;
    doc["model"] = "ets";
    doc["params"] = {{"alpha", fit.params.alpha},
                     {"beta", fit.params.beta},
                     {"gamma", fit.params.gamma},
                     {"period", fit.params.period},
                     {"trend_enabled", fit.params.trend_enabled}};
    doc["state"] = {{"level", fit.state.level},
                    {"trend", fit.state.trend},
                    {"seasonals", fit.state.seasonals},
                    {"t", fit.state.t}};
    doc["sse"] = fit.sse;
    return doc;
}

HoltWintersFit ets_from_json(const Json& doc) {
    require_tag(doc, "ets");
    HoltWintersFit fit;
    const Json& params = require_field(doc, "params");
    fit.params.alpha = field_as<double>(params, "alpha");
    fit.params.beta = field_as<double>(params, "beta");
    fit.params.gamma = field_as<double>(params, "gamma");
    fit.params.period = field_as<std::size_t>(params, "period");
    fit.params.trend_enabled = field_as<bool>(params, "trend_enabled");
    const Json& state = require_field(doc, "state");
    fit.state.level = field_as<double>(state, "level");
    fit.state.trend = field_as<double>(state, "trend");
    fit.state.seasonals = field_as<std::vector<double>>(state, "seasonals");
    fit.state.t = field_as<std::size_t>(state, "t");
    fit.sse = field_as<double>(doc, "sse");
    if (fit.state.seasonals.size() != fit.params.period) {
        throw MalformedModelFile("seasonal state length disagrees with the period");
    }
    return fit;
}

Json mlp_to_json(const MlpArtifact& artifact) {
    Json doc;
    doc["model"] = "mlp";
    doc["config"] = {{"input_size", artifact.config.input_size},
                     {"hidden_size", artifact.config.hidden_size},
                     {"dropout_rate", artifact.config.dropout_rate},
                     {"epochs", artifact.config.epochs},
                     {"batch_size", artifact.config.batch_size},
                     {"learning_rate", artifact.config.learning_rate},
                     {"seed", artifact.config.seed}};
    doc["w1"] = matrix_to_json(artifact.params.w1);
    doc["b1"] = artifact.params.b1;
    doc["w2"] = artifact.params.w2;
    doc["b2"] = artifact.params.b2;
    doc["standardizer"] = {{"mean", artifact.standardizer.mean},
                           {"std", artifact.standardizer.std}};
    doc["recent"] = artifact.recent;
    doc["final_loss"] = artifact.final_loss;
    return doc;
}

MlpArtifact mlp_from_json(const Json& doc) {
    require_tag(doc, "mlp");
    MlpArtifact artifact;
    const Json& config = require_field(doc, "config");
    artifact.config.input_size = field_as<std::size_t>(config, "input_size");
    artifact.config.hidden_size = field_as<std::size_t>(config, "hidden_size");
    artifact.config.dropout_rate = field_as<double>(config, "dropout_rate");
    artifact.config.epochs = field_as<std::size_t>(config, "epochs");
    artifact.config.batch_size = field_as<std::size_t>(config, "batch_size");
    artifact.config.learning_rate = field_as<double>(config, "learning_rate");
    artifact.config.seed = field_as<std::uint64_t>(config, "seed");
    artifact.params.w1 = matrix_from_json(doc, "w1");
    artifact.params.b1 = field_as<std::vector<double>>(doc, "b1");
    artifact.params.w2 = field_as<std::vector<double>>(doc, "w2");
    artifact.params.b2 = field_as<double>(doc, "b2");
    const Json& standardizer = require_field(doc, "standardizer");
    artifact.standardizer.mean = field_as<double>(standardizer, "mean");
    artifact.standardizer.std = field_as<double>(standardizer, "std");
    artifact.recent = field_as<std::vector<double>>(doc, "recent");
    artifact.final_loss = field_as<double>(doc, "final_loss");
    const std::size_t hidden = artifact.params.w1.rows;
    const std::size_t input = artifact.params.w1.cols;
    if (hidden != artifact.config.hidden_size || input != artifact.config.input_size ||
        artifact.params.b1.size() != hidden || artifact.params.w2.size() != hidden ||
        artifact.recent.size() != input) {
        throw MalformedModelFile("network shapes disagree with the config");
    }
    return artifact;
}

Json gp_to_json(const GpArtifact& artifact) {
    Json doc;
    doc["model"] = "gp";
    doc["kernel"] = artifact.kernel;
    doc["train_inputs"] = artifact.train_inputs;
    doc["train_targets"] = artifact.train_targets;
    return doc;
}

GpArtifact gp_from_json(const Json& doc) {
    require_tag(doc, "gp");
    GpArtifact artifact;
    artifact.kernel = field_as<std::string>(doc, "kernel");
    artifact.train_inputs = field_as<std::vector<double>>(doc, "train_inputs");
    artifact.train_targets = field_as<std::vector<double>>(doc, "train_targets");
    if (artifact.train_inputs.size() != artifact.train_targets.size()) {
        throw MalformedModelFile("training inputs and targets differ in length");
    }
    if (artifact.train_inputs.empty()) {
        throw MalformedModelFile("GP artifact has no training data");
    }
    return artifact;
}

void save_json(const std::string& path, const Json& doc) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    if (!out) throw EmptyFile("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw EmptyFile("failed writing: " + path);
}

Json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EmptyFile("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw MalformedModelFile(std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

}  // namespace tempcast
