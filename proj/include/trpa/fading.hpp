#pragma once

#include <cstdint>
#include <vector>

namespace trpa {

/// Configuration for seeded Rayleigh-fading gain draws.
struct FadingConfig {
    int n_channels = 8;
    double mean_snr_db = 10.0;
    std::uint64_t seed = 1;
    int n_realizations = 1000;

    void validate() const;
};

/// Deterministic uniform in (0, 1) at position `counter` of the stream
/// keyed by `seed` (counter-based splitmix64; pure integer state, so the
/// same inputs give the same bits on every platform).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

/// Gains for one fading realization: a_i = g_i * 10^(snr_db/10) with g_i
/// i.i.d. unit-mean exponential (squared-magnitude Rayleigh). A pure
/// function of (seed, realization_index, channel); realization k is
/// reproducible without generating realizations 0..k-1.
std::vector<double> draw_gains(const FadingConfig& config, int realization_index);

}  // namespace trpa
