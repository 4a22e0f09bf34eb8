#include "trpa/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "trpa/lambertw.hpp"

namespace trpa {
namespace {

constexpr int kMaxDoublings = 200;
constexpr int kMaxBisections = 5000;

void check_channel_args(double gain, double target, double lambda) {
    if (!(gain > 0.0) || !std::isfinite(gain)) {
        throw std::invalid_argument("gain: must be finite and > 0");
    }
    if (!(target >= 0.0) || !std::isfinite(target)) {
        throw std::invalid_argument("target: must be finite and >= 0");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda: must be finite and > 0");
    }
}

double weighted_unclamped(double gain, double target, double weight, double lambda) {
    const double c2 = kLn2 * kLn2;
    const double arg = lambda * c2 * std::exp2(target) / (2.0 * weight * gain);
    return (2.0 * weight) / (lambda * c2) * lambert_w0(arg) - 1.0 / gain;
}

// Inactivity threshold tested before the closed form so that shut-off
// channels receive exactly zero power.
double weighted_clamped(double gain, double target, double weight, double cap_value,
                        double lambda) {
    if (lambda >= 2.0 * weight * gain * target / kLn2) return 0.0;
    const double p = weighted_unclamped(gain, target, weight, lambda);
    if (p <= 0.0) return 0.0;
    return p < cap_value ? p : cap_value;
}

// Bisection state: bracket [lo, hi] with S(lo) >= p_tot >= S(hi) (lo = 0
// stands for the limit S(0+) = sum of caps) and the permanent prune mask.
struct DualSearch {
    const ChannelSet& channels;
    const std::vector<double>& caps_values;
    std::vector<double> thresholds;
    std::vector<char> active;
    bool prune_enabled;
    int evaluations = 0;

    DualSearch(const ChannelSet& ch, const std::vector<double>& caps_v, bool prune)
        : channels(ch),
          caps_values(caps_v),
          thresholds(ch.size()),
          active(ch.size(), 1),
          prune_enabled(prune) {
        for (std::size_t i = 0; i < ch.size(); ++i) {
            thresholds[i] =
                2.0 * ch.weight(i) * ch.gains[i] * ch.targets[i] / kLn2;
        }
    }

    // Pruned channels would evaluate to exactly 0 at any lambda >= lambda_lo,
    // so skipping them leaves every S(lambda) bit-identical.
    double total(double lambda) {
        ++evaluations;
        double sum = 0.0;
        for (std::size_t i = 0; i < channels.size(); ++i) {
            if (!active[i]) continue;
            sum += weighted_clamped(channels.gains[i], channels.targets[i],
                                    channels.weight(i), caps_values[i], lambda);
        }
        return sum;
    }

    // Only sound while lambda_lo never decreases (the bisection phase).
    void prune_below(double lambda_lo) {
        if (!prune_enabled) return;
        for (std::size_t i = 0; i < channels.size(); ++i) {
            if (active[i] && lambda_lo >= thresholds[i]) active[i] = 0;
        }
    }
};

Allocation finish(const Problem& problem, const std::vector<double>& caps_values,
                  double lambda, Regime regime, int bisections, int bracket_evals) {
    const ChannelSet& ch = problem.channels;
    Allocation out;
    out.powers.resize(ch.size());
    out.rates.resize(ch.size());
    double used = 0.0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        const double p =
            regime == Regime::Slack
                ? caps_values[i]
                : weighted_clamped(ch.gains[i], ch.targets[i], ch.weight(i),
                                   caps_values[i], lambda);
        out.powers[i] = p;
        out.rates[i] = rate(ch.gains[i], p);
        used += p;
    }
    // In the slack regime every rate equals its target by construction.
    out.objective = regime == Regime::Slack ? 0.0 : objective(ch, out.powers);
    out.lambda = lambda;
    out.regime = regime;
    out.bisection_iterations = bisections;
    out.bracket_evaluations = bracket_evals;
    out.power_used = used;
    return out;
}

Allocation solve_core(const Problem& problem, double lambda_hint,
                      const SolveOptions& options) {
    problem.validate();
    const std::vector<double> caps_values = caps(problem.channels);
    double csum = 0.0;
    for (double v : caps_values) csum += v;

    if (problem.p_tot >= csum) {
        return finish(problem, caps_values, 0.0, Regime::Slack, 0, 0);
    }

    DualSearch search(problem.channels, caps_values, options.prune);
    const double p_tot = problem.p_tot;

    double lo = 0.0;
    double hi = 1.0;
    if (lambda_hint > 0.0) {
        lo = 0.5 * lambda_hint;
        hi = 2.0 * lambda_hint;
        if (search.total(hi) > p_tot) {
            // Root above the window: expand upward by doubling.
            int doublings = 0;
            do {
                lo = hi;
                hi *= 2.0;
                if (++doublings > kMaxDoublings) {
                    throw std::runtime_error("solve: failed to bracket the dual variable");
                }
            } while (search.total(hi) > p_tot);
        } else if (search.total(lo) < p_tot) {
            // Root below the window: expand downward by halving; S(0+) is
            // the cap sum, which exceeds p_tot here, so this terminates.
            int halvings = 0;
            do {
                hi = lo;
                lo *= 0.5;
                if (++halvings > kMaxDoublings || lo < 1e-300) {
                    lo = 0.0;
                    break;
                }
            } while (search.total(lo) < p_tot);
        }
    } else {
        int doublings = 0;
        while (search.total(hi) > p_tot) {
            hi *= 2.0;
            if (++doublings > kMaxDoublings) {
                throw std::runtime_error("solve: failed to bracket the dual variable");
            }
        }
    }
    const int bracket_evals = search.evaluations;

    search.prune_below(lo);
    double lambda_final = 0.5 * (lo + hi);
    int bisections = 0;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        lambda_final = mid;
        const double s = search.total(mid);
        ++bisections;
        if (std::fabs(s - p_tot) < problem.epsilon) break;
        if (bisections >= kMaxBisections) break;
        if (mid <= lo || mid >= hi) break;  // double precision exhausted
        if (s > p_tot) {
            lo = mid;
            search.prune_below(lo);
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-300 * std::fmax(1.0, hi)) break;
    }

    return finish(problem, caps_values, lambda_final, Regime::Tight, bisections,
                  bracket_evals);
}

}  // namespace

double unclamped_power(double gain, double target, double lambda) {
    check_channel_args(gain, target, lambda);
    return weighted_unclamped(gain, target, 1.0, lambda);
}

double clamped_power(double gain, double target, double lambda) {
    check_channel_args(gain, target, lambda);
    return weighted_clamped(gain, target, 1.0, cap(gain, target), lambda);
}

double total_power(const ChannelSet& channels, double lambda) {
    channels.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda: must be finite and > 0");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        sum += weighted_clamped(channels.gains[i], channels.targets[i],
                                channels.weight(i),
                                cap(channels.gains[i], channels.targets[i]), lambda);
    }
    return sum;
}

Allocation solve(const Problem& problem, const SolveOptions& options) {
    return solve_core(problem, 0.0, options);
}

Allocation allocate_weighted(const Problem& problem, const SolveOptions& options) {
    if (!problem.channels.has_weights()) {
        throw std::invalid_argument("weights: required for the weighted variant");
    }
    return solve_core(problem, 0.0, options);
}

Allocation solve_warm(const Problem& problem, double lambda_hint,
                      const SolveOptions& options) {
    if (!(lambda_hint >= 0.0) || !std::isfinite(lambda_hint)) {
        throw std::invalid_argument("lambda_hint: must be finite and >= 0");
    }
    return solve_core(problem, lambda_hint, options);
}

std::vector<DualCurvePoint> dual_curve(const ChannelSet& channels,
                                       std::span<const double> lambda_grid) {
    channels.validate();
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (!(lambda_grid[i] > 0.0) || !std::isfinite(lambda_grid[i])) {
            throw std::invalid_argument("lambda_grid: values must be finite and > 0");
        }
        if (i > 0 && lambda_grid[i] < lambda_grid[i - 1]) {
            throw std::invalid_argument("lambda_grid: must be sorted ascending");
        }
    }
    std::vector<DualCurvePoint> points;
    points.reserve(lambda_grid.size());
    for (double lambda : lambda_grid) {
        points.push_back({lambda, total_power(channels, lambda)});
    }
    return points;
}

}  // namespace trpa
