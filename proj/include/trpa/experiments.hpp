#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "trpa/fading.hpp"
#include "trpa/model.hpp"
#include "trpa/solver.hpp"

namespace trpa {

/// The four allocation strategies compared throughout the experiments.
enum class Strategy { TargetRate, Waterfilling, Uniform, ProportionalFairness };

inline constexpr std::array<Strategy, 4> kAllStrategies = {
    Strategy::TargetRate, Strategy::Waterfilling, Strategy::Uniform,
    Strategy::ProportionalFairness};

const char* to_string(Strategy strategy);

/// Runs one strategy on (channels, p_tot) with the default tolerance.
Allocation run_strategy(Strategy strategy, const ChannelSet& channels, double p_tot);

/// The deterministic 8-channel instance used by the desk-scale studies:
/// gains {20, 15, 10, 7, 5, 3, 2, 1}, uniform target (default 3 bits/s/Hz).
ChannelSet reference_instance(double target = 3.0);

struct SweepSeries {
    Strategy strategy{};
    std::vector<double> power_used;
    std::vector<double> objective;
};

struct SweepResult {
    std::vector<double> p_tot_grid;
    double caps_sum = 0.0;
    std::vector<SweepSeries> series;  ///< one entry per strategy, kAllStrategies order
};

/// Runs every strategy at each budget of the ascending positive grid.
SweepResult budget_sweep(const ChannelSet& channels, std::span<const double> grid);

struct HeteroDemo {
    ChannelSet channels;       ///< reference gains, targets {5,4,3,3,2,2,1,1}
    double caps_sum = 0.0;
    double p_tot_tight = 5.0;
    double p_tot_slack = 15.0;
    Allocation tight;          ///< budget below the cap sum: fully consumed
    Allocation slack;          ///< budget above the cap sum: power left unused
    double unused_slack = 0.0;
};

/// The fixed two-regime heterogeneous-targets scenario.
HeteroDemo heterogeneous_demo();

struct MonteCarloSummary {
    Strategy strategy{};
    std::vector<double> deviations;  ///< sorted |r_i - T_i| pool, all realizations x channels
    double median = 0.0;
    double p90 = 0.0;
};

/// Pools per-channel rate deviations of every strategy over
/// config.n_realizations fading draws at a common target and budget.
std::vector<MonteCarloSummary> monte_carlo(const FadingConfig& config, double target,
                                           double p_tot);

struct SnrSeries {
    Strategy strategy{};
    std::vector<double> mean_objective;  ///< one value per grid point
};

struct SnrSweep {
    std::vector<double> snr_grid_db;
    std::vector<SnrSeries> series;
};

/// Mean objective per strategy across the SNR grid; the same realizations
/// (seed, index) are reused at every grid point as common random numbers.
SnrSweep snr_sensitivity(std::span<const double> snr_grid_db, const FadingConfig& base,
                         double target, double p_tot, int realizations = 500);

struct TimingRow {
    int n = 0;
    double mean_seconds = 0.0;
    double std_seconds = 0.0;
    int iterations = 0;  ///< bisection iterations of the timed solve
};

/// Times solve() on one seeded random instance per channel count, mean and
/// std over `runs` repetitions after a discarded warm-up run.
std::vector<TimingRow> timing_bench(std::span<const int> n_grid, int runs,
                                    std::uint64_t seed = 1);

struct WarmStartStudy {
    int steps = 0;
    double mean_cold_bisection = 0.0;
    double mean_warm_bisection = 0.0;
    double mean_cold_evaluations = 0.0;  ///< bracket + bisection S(lambda) sweeps
    double mean_warm_evaluations = 0.0;
};

/// Slowly varying channel study: gains perturbed multiplicatively by
/// exp(sigma * z) each step, previous lambda* fed forward as the warm hint.
WarmStartStudy warm_start_study(int steps = 100, double sigma = 0.01,
                                std::uint64_t seed = 7);

/// CSV emission (comma separated, header row, 17 significant digits).
void write_sweep_csv(const std::string& path, const SweepResult& result);
void write_cdf_csvs(const std::string& directory,
                    std::span<const MonteCarloSummary> summaries);
void write_snr_csv(const std::string& path, const SnrSweep& sweep);
void write_timing_csv(const std::string& path, std::span<const TimingRow> rows);
void write_dual_curve_csv(const std::string& path, std::span<const DualCurvePoint> points);
void write_hetero_csv(const std::string& path, const HeteroDemo& demo);

}  // namespace trpa
