#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace tempcast {

/// Deterministic 64-bit generator (SplitMix64 update) with Gaussian sampling
/// through a rational approximation of the inverse normal CDF. The whole
/// sampling path uses only arithmetic, sqrt and log, so identical seeds give
/// identical streams on every platform this library targets.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on the open interval (0, 1): (k + 0.5) / 2^53 for k in [0, 2^53).
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via inverse-CDF transform.
    double normal() { return inverse_normal_cdf(uniform01()); }

    double normal(double mean, double std) { return mean + std * normal(); }

    /// Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound);

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// Quantile function of the standard normal distribution (Acklam's
    /// rational approximation, |relative error| < 1.2e-9). Input must lie in
    /// the open interval (0, 1).
    static double inverse_normal_cdf(double p);

private:
    std::uint64_t state_;
};

/// FNV-1a hash of a label, used to derive independent per-task seeds.
std::uint64_t hash_label(std::string_view label);

/// Derive a child seed from a root seed and a textual label. Child streams
/// for distinct labels are independent for practical purposes, and adding a
/// new label never perturbs existing ones.
std::uint64_t derive_seed(std::uint64_t root_seed, std::string_view label);

}  // namespace tempcast
