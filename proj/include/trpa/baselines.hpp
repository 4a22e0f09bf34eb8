#pragma once

#include "trpa/model.hpp"

namespace trpa {

enum class BaselineKind { Waterfilling, Uniform, ProportionalFairness };

const char* to_string(BaselineKind kind);

/// Classical sum-rate waterfilling P_i = max(0, nu - 1/a_i) with the water
/// level nu chosen in closed form (sort + per-active-set formula) so that
/// the budget is spent exactly. The objective field is the target-rate J of
/// the result, for comparison; `lambda` carries nu.
Allocation waterfill(const ChannelSet& channels, double p_tot);

/// Equal split P_i = p_tot / N.
Allocation uniform(const ChannelSet& channels, double p_tot);

/// Maximizer of sum_i ln(log2(1 + a_i P_i)) subject to sum P_i = p_tot,
/// P_i >= 0 (single-shot proportional fairness in the power domain).
/// Solved by bisection on the shared dual with per-channel Newton solves;
/// the budget is exhausted to 1e-10. Every channel receives positive power
/// (marginal utility diverges at zero rate).
Allocation proportional_fair(const ChannelSet& channels, double p_tot);

}  // namespace trpa
