#pragma once

#include <span>
#include <vector>

#include "trpa/model.hpp"

namespace trpa {

/// KKT certificate for a candidate allocation: per-channel stationarity
/// residuals, implied nonnegativity multipliers mu_i, and complementary
/// slackness gaps.
struct KktReport {
    std::vector<double> stationarity_residuals;
    std::vector<double> mu;
    double budget_slack_gap = 0.0;  ///< |lambda * (sum P_i - p_tot)|
    double mu_slack_gap = 0.0;      ///< max_i |mu_i * P_i|
    double max_residual = 0.0;
};

struct PgOptions {
    double step = 0.0;       ///< <= 0 selects 1/L with L = max_i f_i''(0)
    long max_iters = 200000;
    double grad_tol = 1e-8;  ///< stop when the gradient-mapping norm falls below
    /// Nesterov momentum with adaptive restart (same step rule, same
    /// projection). Plain fixed-step descent stalls beyond any practical
    /// budget on badly conditioned instances.
    bool accelerated = true;
};

struct PgResult {
    Allocation allocation;
    bool converged = false;
    double grad_map_norm = 0.0;
    long iterations = 0;
};

/// Root of the active-channel stationarity condition
///   2 (log2(1 + a P) - t) a / ((1 + a P) ln2) + lambda = 0
/// on (0, cap), found by plain bisection on P. No Lambert W anywhere on
/// this path; returns 0 when lambda >= 2 a t / ln2 (no positive root).
double stationarity_root(double gain, double target, double lambda);

/// Analytic gradient of the weighted objective at `powers`.
std::vector<double> objective_gradient(const ChannelSet& channels,
                                       std::span<const double> powers);

/// Euclidean projection onto {0 <= x_i <= caps_i, sum x_i <= budget},
/// computed by clipping plus bisection on the half-space multiplier
/// (|sum - budget| <= 1e-12 when the half-space is active).
std::vector<double> project_capped_box(std::span<const double> v,
                                       std::span<const double> caps,
                                       double budget);

/// Upper bound on the objective curvature over the feasible box,
/// max_i w_i f_i''(0); 1/L is the default gradient step.
double curvature_bound(const ChannelSet& channels);

/// Projected-gradient minimizer of the same objective as solve(), used as
/// an independent verification path. Starts from the projection of the cap
/// vector; non-convergence is reported in the result, not thrown.
PgResult projected_gradient_solve(const Problem& problem, const PgOptions& options = {});

/// Evaluates the KKT system of the target-rate problem at `allocation`:
/// active channels get mu_i = 0 and the raw stationarity residual,
/// zero-power channels get mu_i = max(0, lambda - 2 w a t / ln2) with any
/// dual infeasibility counted as residual.
KktReport certify(const Problem& problem, const Allocation& allocation);

}  // namespace trpa
