#pragma once

#include <random>

#include "trpa/model.hpp"

namespace trpa::testutil {

/// Random instance from the verification distribution: N channels, gains
/// in (0.1, 50), targets in [0, 6], budget a random fraction of the cap
/// sum so both regimes occur.
inline Problem random_problem(std::mt19937_64& rng, int max_channels = 16,
                              double budget_lo = 0.2, double budget_hi = 1.6) {
    std::uniform_int_distribution<int> n_dist(1, max_channels);
    std::uniform_real_distribution<double> gain_dist(0.1, 50.0);
    std::uniform_real_distribution<double> target_dist(0.0, 6.0);
    std::uniform_real_distribution<double> budget_dist(budget_lo, budget_hi);

    Problem problem;
    const int n = n_dist(rng);
    for (int i = 0; i < n; ++i) {
        problem.channels.gains.push_back(gain_dist(rng));
        problem.channels.targets.push_back(target_dist(rng));
    }
    const double cs = caps_sum(problem.channels);
    problem.p_tot = std::max(budget_dist(rng) * cs, 1e-6);
    problem.epsilon = 1e-10;
    return problem;
}

}  // namespace trpa::testutil
