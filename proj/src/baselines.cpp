#include "trpa/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace trpa {
namespace {

constexpr double kPfBudgetTol = 1e-10;

void check_budget(double p_tot) {
    if (!(p_tot > 0.0) || !std::isfinite(p_tot)) {
        throw std::invalid_argument("p_tot: must be finite and > 0");
    }
}

Allocation finish_baseline(const ChannelSet& channels, std::vector<double> powers,
                           double dual_or_level, int iterations, int bracket_evals) {
    Allocation out;
    out.rates.resize(channels.size());
    double used = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        out.rates[i] = rate(channels.gains[i], powers[i]);
        used += powers[i];
    }
    out.objective = objective(channels, powers);
    out.powers = std::move(powers);
    out.lambda = dual_or_level;
    out.regime = Regime::Tight;  // baselines always spend the full budget
    out.bisection_iterations = iterations;
    out.bracket_evaluations = bracket_evals;
    out.power_used = used;
    return out;
}

// Newton for u ln u = r on u >= 1. The map is convex and increasing, and
// u0 = r + 2 always lies above the root, so the iteration descends
// monotonically onto it.
double pf_scaled_power(double r) {
    double u = r + 2.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double lnu = std::log(u);
        const double f = u * lnu - r;
        if (std::fabs(f) <= 1e-13 * std::fmax(1.0, r)) return u;
        u -= f / (lnu + 1.0);
    }
    throw std::runtime_error("proportional_fair: inner Newton failed to converge");
}

double pf_total(const ChannelSet& channels, double lambda) {
    double sum = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        const double a = channels.gains[i];
        sum += (pf_scaled_power(a / lambda) - 1.0) / a;
    }
    return sum;
}

}  // namespace

const char* to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::Waterfilling: return "waterfilling";
        case BaselineKind::Uniform: return "uniform";
        case BaselineKind::ProportionalFairness: return "proportional_fairness";
    }
    return "unknown";
}

Allocation waterfill(const ChannelSet& channels, double p_tot) {
    channels.validate();
    check_budget(p_tot);
    const std::size_t n = channels.size();

    std::vector<double> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = 1.0 / channels.gains[i];
    std::vector<double> sorted_inv = inv;
    std::sort(sorted_inv.begin(), sorted_inv.end());

    // Largest active set k such that the implied water level clears the
    // k-th weakest active channel.
    double level = 0.0;
    double prefix = std::accumulate(sorted_inv.begin(), sorted_inv.end(), 0.0);
    for (std::size_t k = n; k >= 1; --k) {
        level = (p_tot + prefix) / static_cast<double>(k);
        if (level > sorted_inv[k - 1]) break;
        prefix -= sorted_inv[k - 1];
    }

    std::vector<double> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        powers[i] = std::fmax(0.0, level - inv[i]);
    }
    return finish_baseline(channels, std::move(powers), level, 0, 0);
}

Allocation uniform(const ChannelSet& channels, double p_tot) {
    channels.validate();
    check_budget(p_tot);
    std::vector<double> powers(channels.size(),
                               p_tot / static_cast<double>(channels.size()));
    return finish_baseline(channels, std::move(powers), 0.0, 0, 0);
}

Allocation proportional_fair(const ChannelSet& channels, double p_tot) {
    channels.validate();
    check_budget(p_tot);

    // Bracket the shared dual: pf_total decreases from +inf (lambda -> 0)
    // to 0 (lambda -> inf).
    double lo = 1.0;
    double hi = 1.0;
    int bracket_evals = 1;
    const double at_one = pf_total(channels, 1.0);
    if (at_one > p_tot) {
        int guard = 0;
        do {
            lo = hi;
            hi *= 2.0;
            ++bracket_evals;
            if (++guard > 200) {
                throw std::runtime_error("proportional_fair: failed to bracket the dual");
            }
        } while (pf_total(channels, hi) > p_tot);
    } else if (at_one < p_tot) {
        int guard = 0;
        do {
            hi = lo;
            lo *= 0.5;
            ++bracket_evals;
            if (++guard > 1100 || lo < 1e-300) {
                throw std::runtime_error("proportional_fair: failed to bracket the dual");
            }
        } while (pf_total(channels, lo) < p_tot);
    }

    double lambda_final = 0.5 * (lo + hi);
    int iterations = 0;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        lambda_final = mid;
        const double s = pf_total(channels, mid);
        ++iterations;
        if (std::fabs(s - p_tot) <= kPfBudgetTol) break;
        if (iterations >= 5000) break;
        if (mid <= lo || mid >= hi) break;
        if (s > p_tot) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    std::vector<double> powers(channels.size());
    for (std::size_t i = 0; i < channels.size(); ++i) {
        const double a = channels.gains[i];
        powers[i] = (pf_scaled_power(a / lambda_final) - 1.0) / a;
    }
    return finish_baseline(channels, std::move(powers), lambda_final, iterations,
                           bracket_evals);
}

}  // namespace trpa
