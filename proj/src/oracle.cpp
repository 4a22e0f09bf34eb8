#include "trpa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trpa {
namespace {

double deviation_gradient(double gain, double target, double weight, double power) {
    const double r = rate(gain, power);
    return 2.0 * weight * (r - target) * gain / ((1.0 + gain * power) * kLn2);
}

double l2_norm(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

}  // namespace

double stationarity_root(double gain, double target, double lambda) {
    if (!(gain > 0.0) || !std::isfinite(gain)) {
        throw std::invalid_argument("gain: must be finite and > 0");
    }
    if (!(target >= 0.0) || !std::isfinite(target)) {
        throw std::invalid_argument("target: must be finite and >= 0");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda: must be finite and > 0");
    }
    if (lambda >= 2.0 * gain * target / kLn2) return 0.0;

    // The stationarity value is negative at 0 and equals +lambda at the cap;
    // bisect the sign change to machine precision.
    double lo = 0.0;
    double hi = cap(gain, target);
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double value = deviation_gradient(gain, target, 1.0, mid) + lambda;
        if (value == 0.0) return mid;
        if (value < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> objective_gradient(const ChannelSet& channels,
                                       std::span<const double> powers) {
    if (powers.size() != channels.size()) {
        throw std::invalid_argument("powers: length must match gains");
    }
    std::vector<double> grad(channels.size());
    for (std::size_t i = 0; i < channels.size(); ++i) {
        grad[i] = deviation_gradient(channels.gains[i], channels.targets[i],
                                     channels.weight(i), powers[i]);
    }
    return grad;
}

std::vector<double> project_capped_box(std::span<const double> v,
                                       std::span<const double> caps,
                                       double budget) {
    if (v.size() != caps.size()) {
        throw std::invalid_argument("caps: length must match the input vector");
    }
    if (!(budget >= 0.0) || !std::isfinite(budget)) {
        throw std::invalid_argument("budget: must be finite and >= 0");
    }
    const std::size_t n = v.size();
    std::vector<double> x(n);
    double sum = 0.0;
    double v_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::clamp(v[i], 0.0, caps[i]);
        sum += x[i];
        v_max = std::fmax(v_max, v[i]);
    }
    if (sum <= budget) return x;

    // Half-space active: find the shift tau with sum clip(v - tau) = budget.
    double lo = 0.0;
    double hi = v_max;
    double tau = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        tau = 0.5 * (lo + hi);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += std::clamp(v[i] - tau, 0.0, caps[i]);
        }
        if (std::fabs(s - budget) <= 1e-12) break;
        if (tau <= lo || tau >= hi) break;
        if (s > budget) {
            lo = tau;
        } else {
            hi = tau;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::clamp(v[i] - tau, 0.0, caps[i]);
    }
    return x;
}

double curvature_bound(const ChannelSet& channels) {
    double bound = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        bound = std::fmax(bound, channels.weight(i) *
                                     curvature(channels.gains[i],
                                               channels.targets[i], 0.0));
    }
    return bound;
}

PgResult projected_gradient_solve(const Problem& problem, const PgOptions& options) {
    problem.validate();
    const ChannelSet& ch = problem.channels;
    const std::size_t n = ch.size();
    const std::vector<double> caps_values = caps(ch);
    double csum = 0.0;
    for (double c : caps_values) csum += c;

    const double step =
        options.step > 0.0 ? options.step : 1.0 / curvature_bound(ch);

    // The cap vector is the box minimizer; its projection is feasible and
    // already optimal whenever the budget constraint is slack.
    std::vector<double> x = project_capped_box(caps_values, caps_values, problem.p_tot);
    std::vector<double> y = x;
    std::vector<double> shifted(n);
    double momentum = 1.0;

    PgResult result;
    result.grad_map_norm = std::numeric_limits<double>::infinity();
    while (result.iterations < options.max_iters) {
        const std::vector<double> grad = objective_gradient(ch, y);
        for (std::size_t i = 0; i < n; ++i) shifted[i] = y[i] - step * grad[i];
        std::vector<double> x_next = project_capped_box(shifted, caps_values, problem.p_tot);
        ++result.iterations;

        double gm = 0.0;
        double restart_dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = (y[i] - x_next[i]) / step;
            gm += g * g;
            restart_dot += (y[i] - x_next[i]) * (x_next[i] - x[i]);
        }
        result.grad_map_norm = std::sqrt(gm);

        if (options.accelerated) {
            if (restart_dot > 0.0) {
                // Momentum points uphill: restart.
                y = x_next;
                momentum = 1.0;
            } else {
                const double next_momentum =
                    0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
                const double beta = (momentum - 1.0) / next_momentum;
                for (std::size_t i = 0; i < n; ++i) {
                    // Keep the extrapolated point inside the box so rates
                    // stay defined.
                    y[i] = std::clamp(x_next[i] + beta * (x_next[i] - x[i]), 0.0,
                                      caps_values[i]);
                }
                momentum = next_momentum;
            }
        } else {
            y = x_next;
        }
        x = std::move(x_next);

        if (result.grad_map_norm <= options.grad_tol) {
            result.converged = true;
            break;
        }
    }

    Allocation& alloc = result.allocation;
    alloc.powers = x;
    alloc.rates.resize(n);
    double used = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        alloc.rates[i] = rate(ch.gains[i], x[i]);
        used += x[i];
    }
    alloc.objective = objective(ch, x);
    alloc.lambda = 0.0;
    alloc.regime = problem.p_tot >= csum ? Regime::Slack : Regime::Tight;
    alloc.power_used = used;
    return result;
}

KktReport certify(const Problem& problem, const Allocation& allocation) {
    problem.validate();
    const ChannelSet& ch = problem.channels;
    if (allocation.powers.size() != ch.size()) {
        throw std::invalid_argument("allocation: dimension mismatch with problem");
    }

    KktReport report;
    report.stationarity_residuals.resize(ch.size());
    report.mu.resize(ch.size());
    const double lambda = allocation.lambda;

    double power_sum = 0.0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        const double p = allocation.powers[i];
        power_sum += p;
        const double grad = deviation_gradient(ch.gains[i], ch.targets[i],
                                               ch.weight(i), p);
        double residual;
        if (p > 0.0) {
            // Active channel: mu vanishes, the full stationarity must hold.
            report.mu[i] = 0.0;
            residual = std::fabs(grad + lambda);
        } else {
            // Shut-off channel: mu absorbs the stationarity; only dual
            // infeasibility (negative implied mu) counts as residual.
            const double implied_mu = lambda + grad;
            report.mu[i] = std::fmax(0.0, implied_mu);
            residual = std::fmax(0.0, -implied_mu);
        }
        report.stationarity_residuals[i] = residual;
        report.max_residual = std::fmax(report.max_residual, residual);
        report.mu_slack_gap = std::fmax(report.mu_slack_gap, std::fabs(report.mu[i] * p));
    }
    report.budget_slack_gap = std::fabs(lambda * (power_sum - problem.p_tot));
    return report;
}

}  // namespace trpa
