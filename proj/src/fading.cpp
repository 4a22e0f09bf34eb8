#include "trpa/fading.hpp"

#include <cmath>
#include <stdexcept>

namespace trpa {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer: pure integer mixing, identical on every platform.
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

void FadingConfig::validate() const {
    if (n_channels < 1) {
        throw std::invalid_argument("n_channels: must be >= 1");
    }
    if (n_realizations < 1) {
        throw std::invalid_argument("n_realizations: must be >= 1");
    }
    if (!std::isfinite(mean_snr_db)) {
        throw std::invalid_argument("mean_snr_db: must be finite");
    }
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = mix(seed + (counter + 1) * kGolden);
    // 53-bit mantissa, offset by half a step: strictly inside (0, 1).
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> draw_gains(const FadingConfig& config, int realization_index) {
    config.validate();
    if (realization_index < 0 || realization_index >= config.n_realizations) {
        throw std::invalid_argument("realization_index: out of range");
    }
    const double scale = std::pow(10.0, config.mean_snr_db / 10.0);
    const std::uint64_t base =
        static_cast<std::uint64_t>(realization_index) *
        static_cast<std::uint64_t>(config.n_channels);
    std::vector<double> gains(config.n_channels);
    for (int i = 0; i < config.n_channels; ++i) {
        const double u = counter_uniform(config.seed, base + static_cast<std::uint64_t>(i));
        // Inverse CDF of the unit-mean exponential; u < 1 keeps it finite,
        // u > 0 keeps the gain strictly positive.
        gains[i] = -std::log1p(-u) * scale;
    }
    return gains;
}

}  // namespace trpa
