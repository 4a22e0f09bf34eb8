#pragma once

#include <span>
#include <vector>

#include "trpa/model.hpp"

namespace trpa {

/// One sample of the dual curve S(lambda) = total allocated power.
struct DualCurvePoint {
    double lambda = 0.0;
    double total_power = 0.0;
};

struct SolveOptions {
    /// Permanently drop channels once lambda_lo passes their inactivity
    /// threshold. Pure optimization: results are bit-identical either way.
    bool prune = true;
};

/// Closed-form stationary power of an active channel at dual value
/// lambda > 0:  (2 / (lambda ln2^2)) W0(lambda ln2^2 2^t / (2 a)) - 1/a.
/// May be negative; tends to cap(a, t) as lambda -> 0+ and to -1/a as
/// lambda -> inf.
double unclamped_power(double gain, double target, double lambda);

/// unclamped_power clipped to [0, cap]; exactly 0 once
/// lambda >= 2 * gain * target / ln2 (inactivity threshold).
double clamped_power(double gain, double target, double lambda);

/// S(lambda) = sum of clamped per-channel powers; nonincreasing in lambda.
/// Honors the ChannelSet's weights when present.
double total_power(const ChannelSet& channels, double lambda);

/// Minimize sum_i w_i (log2(1 + a_i P_i) - T_i)^2 subject to
/// sum P_i <= p_tot, P_i >= 0.
///
/// If the budget covers the cap sum the caps are returned directly
/// (Regime::Slack, lambda = 0, objective exactly 0). Otherwise the dual
/// variable is bracketed by doubling from lambda_hi = 1 and bisected until
/// |S(lambda) - p_tot| < epsilon; the returned powers are the clamped
/// evaluations at the final midpoint, used verbatim (power_used may differ
/// from p_tot by up to epsilon and is reported, not renormalized).
Allocation solve(const Problem& problem, const SolveOptions& options = {});

/// Same contract as solve() but requires explicit weights on the problem.
/// With all-unit weights the result is bit-identical to solve() on the same
/// bisection path.
Allocation allocate_weighted(const Problem& problem, const SolveOptions& options = {});

/// solve() with the initial dual bracket [hint/2, 2*hint] when that
/// brackets the root, expanded outward by doubling otherwise. hint = 0
/// degrades to the cold path. Identical result contract; bracket and
/// bisection evaluation counts are reported so warm-start savings are
/// measurable.
Allocation solve_warm(const Problem& problem, double lambda_hint,
                      const SolveOptions& options = {});

/// Samples total_power() on an ascending positive grid.
std::vector<DualCurvePoint> dual_curve(const ChannelSet& channels,
                                       std::span<const double> lambda_grid);

}  // namespace trpa
