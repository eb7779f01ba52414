#pragma once

#include <chrono>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tempcast/series.hpp"

namespace tempcast {

/// Independent Gaussian draws scaled by std.
struct WhiteNoise {
    double std = 1.0;
};

/// Stationary AR(p) driven by Gaussian innovations. The constructor verifies
/// that every root of 1 - phi_1 z - ... - phi_p z^p lies outside the unit
/// circle. Throws NonStationarySpec otherwise, InvalidHyperparameter for an
/// empty coefficient list or a non-positive noise std.
struct Ar {
    std::vector<double> coeffs;
    double noise_std = 1.0;
    explicit Ar(std::vector<double> coeffs_, double noise_std_ = 1.0);
};

/// Cumulative sum of Gaussian steps.
struct RandomWalk {
    double step_std = 1.0;
};

/// base + amplitude * sin(2 pi day / period) + slope * day / 365.25 + AR(1)
/// noise with coefficient ar_phi and innovation std noise_std.
struct SeasonalArTrend {
    double base = 60.0;       // deg F
    double amplitude = 4.0;   // deg F
    double period = 365.25;   // days
    double ar_phi = 0.6;
    double noise_std = 2.0;   // deg F
    double slope = 0.05;      // deg F per year
};

using SyntheticKind = std::variant<WhiteNoise, Ar, RandomWalk, SeasonalArTrend>;

struct SyntheticSpec {
    SyntheticKind kind;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::chrono::year_month_day start_date =
        std::chrono::year_month_day{std::chrono::year{2000}, std::chrono::month{1},
                                    std::chrono::day{1}};
    Variable variable = Variable::Tmax;
    std::string station_id = "SYNTH";
};

/// Roots of the AR characteristic polynomial 1 - phi_1 z - ... - phi_p z^p
/// (Durand-Kerner iteration). Trailing zero coefficients are trimmed first.
std::vector<std::complex<double>> characteristic_roots(const std::vector<double>& coeffs);

/// Deterministic synthesis: identical (spec, seed) means bit-identical
/// output. AR-type noise runs a 500-step burn-in from zero initial state.
/// Throws InvalidHyperparameter when length is zero.
TimeSeries generate(const SyntheticSpec& spec);

/// Recipe for the bundled two-variable synthetic city in the CDO schema.
struct SyntheticCityConfig {
    std::chrono::year_month_day start_date =
        std::chrono::year_month_day{std::chrono::year{2003}, std::chrono::month{1},
                                    std::chrono::day{1}};
    std::size_t length = 7305;  // 20 years of days, 2003-01-01 .. 2022-12-31
    double tmax_base = 60.0;    // deg F
    double tmin_base = 45.0;    // deg F
    double amplitude = 4.0;     // deg F
    double period = 365.25;     // days
    double ar_phi = 0.6;
    double noise_std = 2.0;     // deg F
    double slope = 0.05;        // deg F per year
    std::uint64_t seed = 0;
    std::string station_id = "SYNTH0001";
    std::string station_name = "SYNTH CITY, TX US";
};

/// Full CSV text (STATION,NAME,DATE,TMAX,TMIN; temperatures to one decimal)
/// with TMAX and TMIN drawn from per-variable derived seeds.
std::string synthetic_city_csv(const SyntheticCityConfig& config);

}  // namespace tempcast
