#include "tempcast/gp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string_view>

#include "tempcast/errors.hpp"
#include "tempcast/kernels.hpp"
#include "tempcast/metrics.hpp"

namespace tempcast {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidHyperparameter(std::string(what) + " must be finite");
}

}  // namespace

NoiseKernel::NoiseKernel(double std_dev) : std(std_dev) {
    require_finite(std_dev, "noise std");
    if (!(std_dev > 0.0)) throw InvalidHyperparameter("noise std must be positive");
}

PeriodicKernel::PeriodicKernel(double length_scale_, double std_dev, double period_)
    : length_scale(length_scale_), std(std_dev), period(period_) {
    require_finite(length_scale_, "periodic length scale");
    require_finite(std_dev, "periodic std");
    require_finite(period_, "periodic period");
    if (!(length_scale_ > 0.0)) {
        throw InvalidHyperparameter("periodic length scale must be positive");
    }
    if (std_dev < 0.0) throw InvalidHyperparameter("periodic std must be non-negative");
    if (!(period_ > 0.0)) throw InvalidHyperparameter("periodic period must be positive");
}

RbfKernel::RbfKernel(double length_scale_, double std_dev)
    : length_scale(length_scale_), std(std_dev) {
    require_finite(length_scale_, "rbf length scale");
    require_finite(std_dev, "rbf std");
    if (!(length_scale_ > 0.0)) throw InvalidHyperparameter("rbf length scale must be positive");
    if (std_dev < 0.0) throw InvalidHyperparameter("rbf std must be non-negative");
}

KernelSpec::KernelSpec(std::vector<KernelComponent> components_)
    : components(std::move(components_)) {
    if (components.empty()) {
        throw InvalidHyperparameter("kernel needs at least one component");
    }
}

double KernelSpec::noise_variance() const {
    double total = 0.0;
    for (const KernelComponent& c : components) {
        if (const auto* noise = std::get_if<NoiseKernel>(&c)) total += noise->std * noise->std;
    }
    return total;
}

double kernel_eval(const KernelSpec& spec, double xi, double xj, bool same_index) {
    double total = 0.0;
    for (const KernelComponent& c : spec.components) {
        if (const auto* noise = std::get_if<NoiseKernel>(&c)) {
            if (same_index) total += noise->std * noise->std;
        } else if (const auto* periodic = std::get_if<PeriodicKernel>(&c)) {
            const double s = std::sin(M_PI * std::abs(xi - xj) / periodic->period);
            total += periodic->std * periodic->std *
                     std::exp(-2.0 * s * s / (periodic->length_scale * periodic->length_scale));
        } else {
            const auto& rbf = std::get<RbfKernel>(c);
            const double d = xi - xj;
            total += rbf.std * rbf.std *
                     std::exp(-d * d / (2.0 * rbf.length_scale * rbf.length_scale));
        }
    }
    return total;
}

namespace {

/// Hand-rolled scanner for the `NAME(p, p, ...)+NAME(...)` grammar.
class KernelScanner {
  public:
    explicit KernelScanner(std::string_view text) : text_(text) {}

    void skip_spaces() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at_end() {
        skip_spaces();
        return pos_ >= text_.size();
    }

    bool consume(char c) {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string read_name() {
        skip_spaces();
        std::string name;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            name.push_back(
                static_cast<char>(std::toupper(static_cast<unsigned char>(text_[pos_]))));
            ++pos_;
        }
        return name;
    }

    double read_number() {
        skip_spaces();
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr == begin) {
            throw MalformedKernel("expected a number at position " + std::to_string(pos_) +
                                  " of kernel description");
        }
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    std::size_t position() const { return pos_; }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

KernelSpec parse_kernel(const std::string& text, bool zero_length_scale_as_one) {
    KernelScanner scanner(text);
    std::vector<KernelComponent> components;
    auto fix_length = [&](double ls) {
        return (zero_length_scale_as_one && ls == 0.0) ? 1.0 : ls;
    };
    while (true) {
        const std::string name = scanner.read_name();
        if (name.empty()) {
            throw MalformedKernel("expected a component name at position " +
                                  std::to_string(scanner.position()) +
                                  " of kernel description");
        }
        if (!scanner.consume('(')) {
            throw MalformedKernel("expected '(' after component name " + name);
        }
        std::vector<double> params;
        params.push_back(scanner.read_number());
        while (scanner.consume(',')) params.push_back(scanner.read_number());
        if (!scanner.consume(')')) {
            throw MalformedKernel("expected ')' closing component " + name);
        }
        if (name == "N") {
            if (params.size() != 1) throw MalformedKernel("N takes one parameter (std)");
            components.emplace_back(NoiseKernel(params[0]));
        } else if (name == "P") {
            if (params.size() != 3) {
                throw MalformedKernel("P takes three parameters (length_scale, std, period)");
            }
            components.emplace_back(PeriodicKernel(fix_length(params[0]), params[1], params[2]));
        } else if (name == "RBF") {
            if (params.size() != 2) {
                throw MalformedKernel("RBF takes two parameters (length_scale, std)");
            }
            components.emplace_back(RbfKernel(fix_length(params[0]), params[1]));
        } else {
            throw MalformedKernel("unknown kernel component " + name);
        }
        if (scanner.at_end()) break;
        if (!scanner.consume('+')) {
            throw MalformedKernel("expected '+' between kernel components");
        }
    }
    return KernelSpec(std::move(components));
}

namespace {

std::string format_param(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace

std::string kernel_to_string(const KernelSpec& spec) {
    std::string out;
    for (const KernelComponent& c : spec.components) {
        if (!out.empty()) out += '+';
        if (const auto* noise = std::get_if<NoiseKernel>(&c)) {
            out += "N(" + format_param(noise->std) + ")";
        } else if (const auto* periodic = std::get_if<PeriodicKernel>(&c)) {
            out += "P(" + format_param(periodic->length_scale) + "," +
                   format_param(periodic->std) + "," + format_param(periodic->period) + ")";
        } else {
            const auto& rbf = std::get<RbfKernel>(c);
            out += "RBF(" + format_param(rbf.length_scale) + "," + format_param(rbf.std) + ")";
        }
    }
    return out;
}

GpPosterior fit_gp(const KernelSpec& kernel, const std::vector<double>& inputs,
                   const std::vector<double>& targets) {
    if (inputs.size() != targets.size()) {
        throw DimensionMismatch("gp inputs and targets must have equal length");
    }
    if (inputs.size() < 2) throw InsufficientData("gp needs at least two training points");
    for (std::size_t i = 0; i + 1 < inputs.size(); ++i) {
        if (!(inputs[i + 1] > inputs[i])) {
            throw DuplicateInputs("gp inputs must be strictly increasing (index " +
                                  std::to_string(i + 1) + ")");
        }
    }

    GpPosterior post(kernel);
    post.standardizer = fit_standardizer(targets);
    post.train_targets = post.standardizer.apply(targets);
    post.input_offset = inputs.front();
    post.input_scale = inputs.back() - inputs.front();
    post.train_inputs.resize(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        post.train_inputs[i] = (inputs[i] - post.input_offset) / post.input_scale;
    }
    post.noise_variance = kernel.noise_variance();

    const std::size_t n = inputs.size();
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v =
                kernel_eval(kernel, post.train_inputs[i], post.train_inputs[j], i == j);
            gram(i, j) = v;
            gram(j, i) = v;
        }
    }
    post.chol = cholesky(gram, 1e-4);
    post.alpha = solve_spd(post.chol, post.train_targets);
    return post;
}

GpPrediction predict_gp(const GpPosterior& posterior, const std::vector<double>& query_inputs) {
    const std::size_t n = posterior.train_inputs.size();
    GpPrediction prediction;
    prediction.means.reserve(query_inputs.size());
    prediction.variances.reserve(query_inputs.size());
    std::vector<double> k_star(n);
    const double target_var = posterior.standardizer.std * posterior.standardizer.std;
    for (double raw : query_inputs) {
        const double u = (raw - posterior.input_offset) / posterior.input_scale;
        for (std::size_t i = 0; i < n; ++i) {
            k_star[i] = kernel_eval(posterior.kernel, u, posterior.train_inputs[i], false);
        }
        const double mean_z = kernels::dot(k_star.data(), posterior.alpha.data(), n);
        const std::vector<double> v = solve_lower(posterior.chol.lower, k_star);
        double var_z = kernel_eval(posterior.kernel, u, u, false) -
                       kernels::sum_sq(v.data(), v.size());
        if (var_z < 0.0) var_z = 0.0;
        prediction.means.push_back(posterior.standardizer.invert(mean_z));
        prediction.variances.push_back(var_z * target_var);
    }
    return prediction;
}

std::vector<KernelTrial> kernel_grid_trial(const std::vector<double>& train_inputs,
                                           const std::vector<double>& train_targets,
                                           const std::vector<double>& test_inputs,
                                           const std::vector<double>& test_targets,
                                           const std::vector<std::string>& candidates) {
    if (candidates.empty()) throw EmptyInput("kernel sweep needs at least one candidate");
    if (train_inputs.size() != train_targets.size() ||
        test_inputs.size() != test_targets.size()) {
        throw DimensionMismatch("kernel sweep set lengths do not match");
    }

    std::vector<KernelTrial> rows;
    rows.reserve(candidates.size());
    for (const std::string& candidate : candidates) {
        KernelTrial row;
        row.kernel = candidate;
        try {
            const KernelSpec spec = parse_kernel(candidate);
            const GpPosterior post = fit_gp(spec, train_inputs, train_targets);
            const GpPrediction pred = predict_gp(post, test_inputs);
            row.rmse = rmse(test_targets, pred.means);
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const KernelTrial& a, const KernelTrial& b) {
        if (a.ok != b.ok) return a.ok;  // failures last
        if (!a.ok) return false;        // failures keep candidate order
        return a.rmse < b.rmse;
    });
    return rows;
}

}  // namespace tempcast
