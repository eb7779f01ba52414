#include "tempcast/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "tempcast/errors.hpp"
#include "tempcast/rng.hpp"

namespace tempcast {
namespace {

constexpr std::size_t kBurnIn = 500;
constexpr double kDaysPerYear = 365.25;
// Any characteristic root this close to (or inside) the unit circle is
// treated as non-stationary; processes that near the boundary mix far too
// slowly for a finite burn-in anyway.
constexpr double kUnitCircleMargin = 1e-9;

void require_finite_field(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw InvalidHyperparameter(std::string(what) + " must be finite");
    }
}

void require_non_negative(double value, const char* what) {
    require_finite_field(value, what);
    if (value < 0.0) {
        throw InvalidHyperparameter(std::string(what) + " must be non-negative");
    }
}

std::complex<double> horner(const std::vector<std::complex<double>>& monic_tail,
                            std::complex<double> z) {
    // Evaluates z^d + c_{d-1} z^{d-1} + ... + c_0 given the tail coefficients.
    std::complex<double> acc{1.0, 0.0};
    for (auto it = monic_tail.rbegin(); it != monic_tail.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

}  // namespace

std::vector<std::complex<double>> characteristic_roots(const std::vector<double>& coeffs) {
    // Polynomial 1 - phi_1 z - ... - phi_p z^p with trailing zeros dropped.
    std::size_t degree = coeffs.size();
    while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
    if (degree == 0) return {};

    // Normalize to monic form: z^d + c_{d-1} z^{d-1} + ... + c_0 where the
    // original coefficient of z^k is (k == 0 ? 1 : -phi_k).
    const double lead = -coeffs[degree - 1];
    std::vector<std::complex<double>> tail(degree);
    tail[0] = std::complex<double>{1.0 / lead, 0.0};
    for (std::size_t k = 1; k < degree; ++k) {
        tail[k] = std::complex<double>{-coeffs[k - 1] / lead, 0.0};
    }

    // Durand-Kerner: simultaneous iteration from spread-out starting points.
    std::vector<std::complex<double>> roots(degree);
    const std::complex<double> base{0.4, 0.9};
    std::complex<double> power{1.0, 0.0};
    for (std::size_t j = 0; j < degree; ++j) {
        power *= base;
        roots[j] = power;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (std::size_t j = 0; j < degree; ++j) {
            std::complex<double> denom{1.0, 0.0};
            for (std::size_t k = 0; k < degree; ++k) {
                if (k != j) denom *= roots[j] - roots[k];
            }
            const std::complex<double> delta = horner(tail, roots[j]) / denom;
            roots[j] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-13) break;
    }
    return roots;
}

Ar::Ar(std::vector<double> coeffs_, double noise_std_)
    : coeffs(std::move(coeffs_)), noise_std(noise_std_) {
    if (coeffs.empty()) {
        throw InvalidHyperparameter("AR spec needs at least one coefficient");
    }
    for (double phi : coeffs) require_finite_field(phi, "AR coefficient");
    require_non_negative(noise_std, "AR noise std");
    for (const auto& root : characteristic_roots(coeffs)) {
        if (std::abs(root) <= 1.0 + kUnitCircleMargin) {
            char buffer[96];
            std::snprintf(buffer, sizeof(buffer),
                          "characteristic root at |z| = %.6f is not outside the unit circle",
                          std::abs(root));
            throw NonStationarySpec(buffer);
        }
    }
}

TimeSeries generate(const SyntheticSpec& spec) {
    if (spec.length == 0) {
        throw InvalidHyperparameter("synthetic series length must be at least 1");
    }
    Rng rng(spec.seed);
    std::vector<double> values;
    values.reserve(spec.length);

    if (const auto* white = std::get_if<WhiteNoise>(&spec.kind)) {
        require_non_negative(white->std, "white noise std");
        for (std::size_t i = 0; i < spec.length; ++i) {
            values.push_back(white->std * rng.normal());
        }
    } else if (const auto* ar = std::get_if<Ar>(&spec.kind)) {
        const std::size_t p = ar->coeffs.size();
        std::vector<double> history;
        history.reserve(kBurnIn + spec.length);
        for (std::size_t t = 0; t < kBurnIn + spec.length; ++t) {
            double value = ar->noise_std * rng.normal();
            for (std::size_t k = 0; k < p; ++k) {
                if (t > k) value += ar->coeffs[k] * history[t - 1 - k];
            }
            history.push_back(value);
        }
        values.assign(history.begin() + static_cast<long>(kBurnIn), history.end());
    } else if (const auto* walk = std::get_if<RandomWalk>(&spec.kind)) {
        require_non_negative(walk->step_std, "random walk step std");
        double level = 0.0;
        for (std::size_t i = 0; i < spec.length; ++i) {
            level += walk->step_std * rng.normal();
            values.push_back(level);
        }
    } else {
        const auto& seasonal = std::get<SeasonalArTrend>(spec.kind);
        require_finite_field(seasonal.base, "seasonal base");
        require_finite_field(seasonal.amplitude, "seasonal amplitude");
        require_finite_field(seasonal.slope, "seasonal slope");
        require_non_negative(seasonal.noise_std, "seasonal noise std");
        require_finite_field(seasonal.ar_phi, "seasonal AR coefficient");
        if (!(seasonal.period > 0.0) || !std::isfinite(seasonal.period)) {
            throw InvalidHyperparameter("seasonal period must be positive");
        }
        if (std::abs(seasonal.ar_phi) >= 1.0 - kUnitCircleMargin) {
            throw NonStationarySpec("seasonal AR(1) coefficient must satisfy |phi| < 1");
        }
        double noise = 0.0;
        for (std::size_t t = 0; t < kBurnIn; ++t) {
            noise = seasonal.ar_phi * noise + seasonal.noise_std * rng.normal();
        }
        for (std::size_t i = 0; i < spec.length; ++i) {
            noise = seasonal.ar_phi * noise + seasonal.noise_std * rng.normal();
            const double day = static_cast<double>(i);
            values.push_back(seasonal.base +
                             seasonal.amplitude * std::sin(2.0 * M_PI * day / seasonal.period) +
                             seasonal.slope * day / kDaysPerYear + noise);
        }
    }

    TimeSeries series;
    series.station_id = spec.station_id;
    series.variable = spec.variable;
    series.start_date = spec.start_date;
    series.values = std::move(values);
    series.filled_days = 0;
    return series;
}

std::string synthetic_city_csv(const SyntheticCityConfig& config) {
    SyntheticSpec tmax_spec;
    tmax_spec.kind = SeasonalArTrend{config.tmax_base,  config.amplitude, config.period,
                                     config.ar_phi,     config.noise_std, config.slope};
    tmax_spec.length = config.length;
    tmax_spec.seed = derive_seed(config.seed, "synthcity/tmax");
    tmax_spec.start_date = config.start_date;
    tmax_spec.variable = Variable::Tmax;
    tmax_spec.station_id = config.station_id;

    SyntheticSpec tmin_spec = tmax_spec;
    tmin_spec.kind = SeasonalArTrend{config.tmin_base,  config.amplitude, config.period,
                                     config.ar_phi,     config.noise_std, config.slope};
    tmin_spec.seed = derive_seed(config.seed, "synthcity/tmin");
    tmin_spec.variable = Variable::Tmin;

    const TimeSeries tmax = generate(tmax_spec);
    const TimeSeries tmin = generate(tmin_spec);

    std::string csv = "\"STATION\",\"NAME\",\"DATE\",\"TMAX\",\"TMIN\"\n";
    csv.reserve(csv.size() + config.length * 64);
    char buffer[160];
    for (std::size_t i = 0; i < config.length; ++i) {
        std::snprintf(buffer, sizeof(buffer), "\"%s\",\"%s\",\"%s\",\"%.1f\",\"%.1f\"\n",
                      config.station_id.c_str(), config.station_name.c_str(),
                      format_date(tmax.date_at(i)).c_str(), tmax.values[i], tmin.values[i]);
        csv += buffer;
    }
    return csv;
}

}  // namespace tempcast
