#include "trpa/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "trpa/baselines.hpp"

namespace trpa {
namespace {

std::string fmt17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return out;
}

// Quantile of a sorted sample with linear interpolation between order
// statistics.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

// Standard normal via Box-Muller on the counter stream.
double counter_normal(std::uint64_t seed, std::uint64_t counter) {
    const double u1 = counter_uniform(seed, 2 * counter);
    const double u2 = counter_uniform(seed, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

const char* to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::TargetRate: return "target_rate";
        case Strategy::Waterfilling: return "waterfilling";
        case Strategy::Uniform: return "uniform";
        case Strategy::ProportionalFairness: return "proportional_fairness";
    }
    return "unknown";
}

Allocation run_strategy(Strategy strategy, const ChannelSet& channels, double p_tot) {
    switch (strategy) {
        case Strategy::TargetRate: return solve({channels, p_tot, 1e-10});
        case Strategy::Waterfilling: return waterfill(channels, p_tot);
        case Strategy::Uniform: return uniform(channels, p_tot);
        case Strategy::ProportionalFairness: return proportional_fair(channels, p_tot);
    }
    throw std::invalid_argument("strategy: unknown value");
}

ChannelSet reference_instance(double target) {
    ChannelSet channels;
    channels.gains = {20.0, 15.0, 10.0, 7.0, 5.0, 3.0, 2.0, 1.0};
    channels.targets.assign(channels.gains.size(), target);
    return channels;
}

SweepResult budget_sweep(const ChannelSet& channels, std::span<const double> grid) {
    channels.validate();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
            throw std::invalid_argument("grid: budgets must be finite and > 0");
        }
        if (i > 0 && grid[i] < grid[i - 1]) {
            throw std::invalid_argument("grid: must be sorted ascending");
        }
    }

    SweepResult result;
    result.p_tot_grid.assign(grid.begin(), grid.end());
    result.caps_sum = caps_sum(channels);
    for (Strategy strategy : kAllStrategies) {
        SweepSeries series;
        series.strategy = strategy;
        series.power_used.reserve(grid.size());
        series.objective.reserve(grid.size());
        for (double p_tot : grid) {
            const Allocation alloc = run_strategy(strategy, channels, p_tot);
            series.power_used.push_back(alloc.power_used);
            series.objective.push_back(alloc.objective);
        }
        result.series.push_back(std::move(series));
    }
    return result;
}

HeteroDemo heterogeneous_demo() {
    HeteroDemo demo;
    demo.channels = reference_instance();
    demo.channels.targets = {5.0, 4.0, 3.0, 3.0, 2.0, 2.0, 1.0, 1.0};
    demo.caps_sum = caps_sum(demo.channels);
    demo.tight = solve({demo.channels, demo.p_tot_tight, 1e-10});
    demo.slack = solve({demo.channels, demo.p_tot_slack, 1e-10});
    demo.unused_slack = demo.p_tot_slack - demo.slack.power_used;
    return demo;
}

std::vector<MonteCarloSummary> monte_carlo(const FadingConfig& config, double target,
                                           double p_tot) {
    config.validate();
    std::vector<MonteCarloSummary> summaries;
    for (Strategy strategy : kAllStrategies) {
        MonteCarloSummary summary;
        summary.strategy = strategy;
        summary.deviations.reserve(static_cast<std::size_t>(config.n_realizations) *
                                   static_cast<std::size_t>(config.n_channels));
        summaries.push_back(std::move(summary));
    }

    ChannelSet channels;
    channels.targets.assign(config.n_channels, target);
    for (int k = 0; k < config.n_realizations; ++k) {
        channels.gains = draw_gains(config, k);
        for (std::size_t s = 0; s < kAllStrategies.size(); ++s) {
            const Allocation alloc = run_strategy(kAllStrategies[s], channels, p_tot);
            for (double r : alloc.rates) {
                summaries[s].deviations.push_back(std::fabs(r - target));
            }
        }
    }
    for (MonteCarloSummary& summary : summaries) {
        std::sort(summary.deviations.begin(), summary.deviations.end());
        summary.median = quantile_sorted(summary.deviations, 0.5);
        summary.p90 = quantile_sorted(summary.deviations, 0.9);
    }
    return summaries;
}

SnrSweep snr_sensitivity(std::span<const double> snr_grid_db, const FadingConfig& base,
                         double target, double p_tot, int realizations) {
    if (snr_grid_db.empty()) {
        throw std::invalid_argument("snr_grid_db: must be nonempty");
    }
    if (realizations < 1) {
        throw std::invalid_argument("realizations: must be >= 1");
    }

    SnrSweep sweep;
    sweep.snr_grid_db.assign(snr_grid_db.begin(), snr_grid_db.end());
    for (Strategy strategy : kAllStrategies) {
        sweep.series.push_back({strategy, {}});
    }

    FadingConfig config = base;
    config.n_realizations = realizations;
    ChannelSet channels;
    channels.targets.assign(config.n_channels, target);
    for (double snr_db : snr_grid_db) {
        // Same (seed, realization) draws at every grid point: the SNR only
        // rescales them, which keeps the curves smooth in SNR.
        config.mean_snr_db = snr_db;
        std::array<double, 4> totals{};
        for (int k = 0; k < realizations; ++k) {
            channels.gains = draw_gains(config, k);
            for (std::size_t s = 0; s < kAllStrategies.size(); ++s) {
                totals[s] += run_strategy(kAllStrategies[s], channels, p_tot).objective;
            }
        }
        for (std::size_t s = 0; s < kAllStrategies.size(); ++s) {
            sweep.series[s].mean_objective.push_back(totals[s] /
                                                     static_cast<double>(realizations));
        }
    }
    return sweep;
}

std::vector<TimingRow> timing_bench(std::span<const int> n_grid, int runs,
                                    std::uint64_t seed) {
    if (runs < 5) {
        throw std::invalid_argument("runs: must be >= 5");
    }
    using clock = std::chrono::steady_clock;

    std::vector<TimingRow> rows;
    for (int n : n_grid) {
        if (n < 1) throw std::invalid_argument("n_grid: counts must be >= 1");
        FadingConfig config{n, 10.0, seed, 1};
        ChannelSet channels;
        channels.gains = draw_gains(config, 0);
        channels.targets.assign(static_cast<std::size_t>(n), 3.0);
        const Problem problem{channels, 0.5 * caps_sum(channels), 1e-10};

        Allocation alloc = solve(problem);  // warm-up, discarded

        std::vector<double> seconds(static_cast<std::size_t>(runs));
        for (int r = 0; r < runs; ++r) {
            const auto start = clock::now();
            alloc = solve(problem);
            const auto stop = clock::now();
            seconds[static_cast<std::size_t>(r)] =
                std::chrono::duration<double>(stop - start).count();
        }

        double mean = 0.0;
        for (double s : seconds) mean += s;
        mean /= static_cast<double>(runs);
        double var = 0.0;
        for (double s : seconds) var += (s - mean) * (s - mean);
        var /= static_cast<double>(runs - 1);

        rows.push_back({n, mean, std::sqrt(var), alloc.bisection_iterations});
    }
    return rows;
}

WarmStartStudy warm_start_study(int steps, double sigma, std::uint64_t seed) {
    if (steps < 1) throw std::invalid_argument("steps: must be >= 1");

    // Tight budget: the dual sits far above the cold-start bracket, which
    // is where warm starts pay off.
    ChannelSet channels = reference_instance();
    const double p_tot = 0.5;

    std::uint64_t counter = 0;
    auto perturb = [&]() {
        for (double& a : channels.gains) {
            a *= std::exp(sigma * counter_normal(seed, counter++));
        }
    };

    perturb();
    double lambda_prev = solve({channels, p_tot, 1e-10}).lambda;

    WarmStartStudy study;
    study.steps = steps;
    for (int step = 0; step < steps; ++step) {
        perturb();
        const Problem problem{channels, p_tot, 1e-10};
        const Allocation cold = solve(problem);
        const Allocation warm = solve_warm(problem, lambda_prev);
        study.mean_cold_bisection += cold.bisection_iterations;
        study.mean_warm_bisection += warm.bisection_iterations;
        study.mean_cold_evaluations += cold.bisection_iterations + cold.bracket_evaluations;
        study.mean_warm_evaluations += warm.bisection_iterations + warm.bracket_evaluations;
        lambda_prev = cold.lambda;
    }
    study.mean_cold_bisection /= steps;
    study.mean_warm_bisection /= steps;
    study.mean_cold_evaluations /= steps;
    study.mean_warm_evaluations /= steps;
    return study;
}

void write_sweep_csv(const std::string& path, const SweepResult& result) {
    std::ofstream out = open_csv(path);
    out << "p_tot,strategy,power_used,objective\n";
    for (std::size_t i = 0; i < result.p_tot_grid.size(); ++i) {
        for (const SweepSeries& series : result.series) {
            out << fmt17(result.p_tot_grid[i]) << ',' << to_string(series.strategy)
                << ',' << fmt17(series.power_used[i]) << ','
                << fmt17(series.objective[i]) << '\n';
        }
    }
}

void write_cdf_csvs(const std::string& directory,
                    std::span<const MonteCarloSummary> summaries) {
    for (const MonteCarloSummary& summary : summaries) {
        std::ofstream out =
            open_csv(directory + "/cdf_" + to_string(summary.strategy) + ".csv");
        out << "deviation,empirical_cdf\n";
        const double count = static_cast<double>(summary.deviations.size());
        for (std::size_t i = 0; i < summary.deviations.size(); ++i) {
            out << fmt17(summary.deviations[i]) << ','
                << fmt17(static_cast<double>(i + 1) / count) << '\n';
        }
    }
}

void write_snr_csv(const std::string& path, const SnrSweep& sweep) {
    std::ofstream out = open_csv(path);
    out << "snr_db,strategy,mean_J\n";
    for (std::size_t i = 0; i < sweep.snr_grid_db.size(); ++i) {
        for (const SnrSeries& series : sweep.series) {
            out << fmt17(sweep.snr_grid_db[i]) << ',' << to_string(series.strategy)
                << ',' << fmt17(series.mean_objective[i]) << '\n';
        }
    }
}

void write_timing_csv(const std::string& path, std::span<const TimingRow> rows) {
    std::ofstream out = open_csv(path);
    out << "n,mean_s,std_s,iterations\n";
    for (const TimingRow& row : rows) {
        out << row.n << ',' << fmt17(row.mean_seconds) << ','
            << fmt17(row.std_seconds) << ',' << row.iterations << '\n';
    }
}

void write_dual_curve_csv(const std::string& path,
                          std::span<const DualCurvePoint> points) {
    std::ofstream out = open_csv(path);
    out << "lambda,total_power\n";
    for (const DualCurvePoint& point : points) {
        out << fmt17(point.lambda) << ',' << fmt17(point.total_power) << '\n';
    }
}

void write_hetero_csv(const std::string& path, const HeteroDemo& demo) {
    std::ofstream out = open_csv(path);
    out << "channel,gain,target,power,rate,cap\n";
    for (std::size_t i = 0; i < demo.channels.size(); ++i) {
        out << i << ',' << fmt17(demo.channels.gains[i]) << ','
            << fmt17(demo.channels.targets[i]) << ',' << fmt17(demo.tight.powers[i])
            << ',' << fmt17(demo.tight.rates[i]) << ','
            << fmt17(cap(demo.channels.gains[i], demo.channels.targets[i])) << '\n';
    }
}

}  // namespace trpa
