// Command-line front end: solving single instances, KKT certification, and
// the experiment harness (CSV emission).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trpa/baselines.hpp"
#include "trpa/experiments.hpp"
#include "trpa/fading.hpp"
#include "trpa/model.hpp"
#include "trpa/oracle.hpp"
#include "trpa/problem_io.hpp"
#include "trpa/solver.hpp"

namespace {

struct InstanceFlags {
    std::string input_path;
    std::vector<double> gains;
    std::vector<double> gains_db;
    std::vector<double> targets;
    std::vector<double> weights;
    double target = std::numeric_limits<double>::quiet_NaN();
    double p_tot = std::numeric_limits<double>::quiet_NaN();
    double epsilon = std::numeric_limits<double>::quiet_NaN();
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& flags, bool default_reference) {
    cmd->add_option("--input", flags.input_path,
                    "problem-instance JSON file (gains, targets, weights, p_tot, epsilon)");
    cmd->add_option("--gains", flags.gains, "channel gains, linear, comma separated")
        ->delimiter(',');
    cmd->add_option("--gains-db", flags.gains_db,
                    "channel gains in dB (converted via 10^(x/10))")
        ->delimiter(',');
    cmd->add_option("--targets", flags.targets, "per-channel targets, comma separated")
        ->delimiter(',');
    cmd->add_option("--target", flags.target, "scalar target broadcast to all channels");
    cmd->add_option("--ptot", flags.p_tot, "total power budget");
    cmd->add_option("--epsilon", flags.epsilon, "bisection tolerance (default 1e-10)");
    (void)default_reference;
}

trpa::Problem build_problem(const InstanceFlags& flags, bool default_reference) {
    trpa::Problem problem;
    bool have_instance = false;
    if (!flags.input_path.empty()) {
        problem = trpa::load_problem(flags.input_path);
        have_instance = true;
    }

    if (!flags.gains.empty() || !flags.gains_db.empty()) {
        if (!flags.gains.empty() && !flags.gains_db.empty()) {
            throw std::invalid_argument("gains: give either --gains or --gains-db, not both");
        }
        problem.channels.gains = flags.gains;
        for (double db : flags.gains_db) {
            problem.channels.gains.push_back(std::pow(10.0, db / 10.0));
        }
        problem.channels.targets.clear();
        have_instance = true;
    } else if (!have_instance && default_reference) {
        problem.channels = trpa::reference_instance();
        have_instance = true;
    }
    if (!have_instance) {
        throw std::invalid_argument("gains: required (give --input, --gains or --gains-db)");
    }

    if (!flags.targets.empty()) {
        problem.channels.targets = flags.targets;
    } else if (!std::isnan(flags.target)) {
        problem.channels.targets.assign(problem.channels.gains.size(), flags.target);
    } else if (problem.channels.targets.empty()) {
        throw std::invalid_argument("targets: required (give --target or --targets)");
    }
    if (!flags.weights.empty()) {
        problem.channels.weights = flags.weights;
    }
    if (!std::isnan(flags.p_tot)) {
        problem.p_tot = flags.p_tot;
    }
    if (!std::isnan(flags.epsilon)) {
        problem.epsilon = flags.epsilon;
    }
    problem.validate();
    return problem;
}

void print_allocation(const trpa::Problem& problem, const trpa::Allocation& alloc) {
    const std::vector<double> caps = trpa::caps(problem.channels);
    std::printf("%4s %12s %12s %12s %12s %12s\n", "ch", "gain", "target", "power",
                "rate", "cap");
    for (std::size_t i = 0; i < problem.channels.size(); ++i) {
        std::printf("%4zu %12.6g %12.6g %12.6g %12.6g %12.6g\n", i,
                    problem.channels.gains[i], problem.channels.targets[i],
                    alloc.powers[i], alloc.rates[i], caps[i]);
    }
    std::printf("objective J   = %.10g\n", alloc.objective);
    std::printf("lambda        = %.10g\n", alloc.lambda);
    std::printf("regime        = %s\n", trpa::to_string(alloc.regime));
    std::printf("power used    = %.10g of %.10g (unused %.10g)\n", alloc.power_used,
                problem.p_tot, problem.p_tot - alloc.power_used);
    std::printf("iterations    = %d bisection + %d bracket\n",
                alloc.bisection_iterations, alloc.bracket_evaluations);
}

int run_solve(const InstanceFlags& flags, bool json_output) {
    const trpa::Problem problem = build_problem(flags, false);
    const trpa::Allocation alloc = trpa::solve(problem);
    if (json_output) {
        std::cout << trpa::allocation_to_json(problem, alloc).dump(2) << "\n";
    } else {
        print_allocation(problem, alloc);
    }
    return 0;
}

int run_certify(const InstanceFlags& flags, bool json_output) {
    const trpa::Problem problem = build_problem(flags, false);
    const trpa::Allocation alloc = trpa::solve(problem);
    const trpa::KktReport report = trpa::certify(problem, alloc);
    if (json_output) {
        nlohmann::json doc = trpa::allocation_to_json(problem, alloc);
        doc["kkt"]["stationarity_residuals"] = report.stationarity_residuals;
        doc["kkt"]["mu"] = report.mu;
        doc["kkt"]["budget_slack_gap"] = report.budget_slack_gap;
        doc["kkt"]["mu_slack_gap"] = report.mu_slack_gap;
        doc["kkt"]["max_residual"] = report.max_residual;
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    print_allocation(problem, alloc);
    std::printf("\nKKT certificate:\n");
    std::printf("%4s %16s %16s\n", "ch", "residual", "mu");
    for (std::size_t i = 0; i < report.mu.size(); ++i) {
        std::printf("%4zu %16.6e %16.6e\n", i, report.stationarity_residuals[i],
                    report.mu[i]);
    }
    std::printf("budget slack gap = %.6e\n", report.budget_slack_gap);
    std::printf("mu slack gap     = %.6e\n", report.mu_slack_gap);
    std::printf("max residual     = %.6e\n", report.max_residual);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"target-rate least-squares power allocation over parallel channels"};
    app.require_subcommand(1);

    InstanceFlags solve_flags;
    bool solve_json = false;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one problem instance");
    add_instance_flags(solve_cmd, solve_flags, false);
    solve_cmd->add_flag("--json", solve_json, "emit a machine-readable JSON document");

    InstanceFlags certify_flags;
    bool certify_json = false;
    CLI::App* certify_cmd =
        app.add_subcommand("certify", "solve and print the KKT certificate");
    add_instance_flags(certify_cmd, certify_flags, false);
    certify_cmd->add_flag("--json", certify_json, "emit a machine-readable JSON document");

    InstanceFlags sweep_flags;
    std::vector<double> sweep_grid = {5.0, 10.0, 15.0, 20.0, 25.0};
    std::string sweep_out = ".";
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "budget sweep over all strategies -> sweep.csv");
    add_instance_flags(sweep_cmd, sweep_flags, true);
    sweep_cmd->add_option("--grid", sweep_grid, "budget grid, comma separated")
        ->delimiter(',');
    sweep_cmd->add_option("--out", sweep_out, "output directory");

    InstanceFlags dual_flags;
    double dual_min = 1e-3, dual_max = 0.0;
    int dual_points = 200;
    std::string dual_out = ".";
    CLI::App* dual_cmd =
        app.add_subcommand("dualcurve", "sample S(lambda) -> dual_curve.csv");
    add_instance_flags(dual_cmd, dual_flags, true);
    dual_cmd->add_option("--lambda-min", dual_min, "grid start (default 1e-3)");
    dual_cmd->add_option("--lambda-max", dual_max,
                         "grid end (default: largest inactivity threshold)");
    dual_cmd->add_option("--points", dual_points, "grid size (log spaced)");
    dual_cmd->add_option("--out", dual_out, "output directory");

    int mc_realizations = 1000, mc_n = 8;
    double mc_snr = 10.0, mc_target = 3.0, mc_ptot = 10.0;
    std::uint64_t mc_seed = 1;
    std::string mc_out = ".";
    CLI::App* mc_cmd = app.add_subcommand(
        "montecarlo", "fading Monte Carlo deviation pools -> cdf_<strategy>.csv");
    mc_cmd->add_option("--realizations", mc_realizations, "fading realizations");
    mc_cmd->add_option("--n", mc_n, "channels per realization");
    mc_cmd->add_option("--snr-db", mc_snr, "mean SNR in dB");
    mc_cmd->add_option("--target", mc_target, "common target");
    mc_cmd->add_option("--ptot", mc_ptot, "budget per realization");
    mc_cmd->add_option("--seed", mc_seed, "RNG seed");
    mc_cmd->add_option("--out", mc_out, "output directory");

    double snr_min = 0.0, snr_max = 20.0;
    int snr_points = 9, snr_realizations = 500, snr_n = 8;
    double snr_target = 3.0, snr_ptot = 10.0;
    std::uint64_t snr_seed = 1;
    std::string snr_out = ".";
    CLI::App* snr_cmd =
        app.add_subcommand("snr", "mean objective vs mean SNR -> snr.csv");
    snr_cmd->add_option("--snr-min", snr_min, "grid start in dB");
    snr_cmd->add_option("--snr-max", snr_max, "grid end in dB");
    snr_cmd->add_option("--points", snr_points, "grid size");
    snr_cmd->add_option("--realizations", snr_realizations, "realizations per point");
    snr_cmd->add_option("--n", snr_n, "channels per realization");
    snr_cmd->add_option("--target", snr_target, "common target");
    snr_cmd->add_option("--ptot", snr_ptot, "budget per realization");
    snr_cmd->add_option("--seed", snr_seed, "RNG seed");
    snr_cmd->add_option("--out", snr_out, "output directory");

    std::vector<int> bench_grid = {4, 8, 16, 32, 64, 128, 256, 512, 1024};
    int bench_runs = 5;
    std::uint64_t bench_seed = 1;
    std::string bench_out = ".";
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "solver timing and warm-start study -> timing.csv");
    bench_cmd->add_option("--n-grid", bench_grid, "channel counts, comma separated")
        ->delimiter(',');
    bench_cmd->add_option("--runs", bench_runs, "timed repetitions per count (>= 5)");
    bench_cmd->add_option("--seed", bench_seed, "instance seed");
    bench_cmd->add_option("--out", bench_out, "output directory");

    std::string hetero_out = ".";
    CLI::App* hetero_cmd = app.add_subcommand(
        "hetero", "two-regime heterogeneous-targets scenario -> hetero.csv");
    hetero_cmd->add_option("--out", hetero_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_flags, solve_json);
        if (certify_cmd->parsed()) return run_certify(certify_flags, certify_json);

        if (sweep_cmd->parsed()) {
            const trpa::Problem base = build_problem(sweep_flags, true);
            const trpa::SweepResult result =
                trpa::budget_sweep(base.channels, sweep_grid);
            trpa::write_sweep_csv(sweep_out + "/sweep.csv", result);
            std::printf("cap sum = %.10g\n", result.caps_sum);
            std::printf("%10s", "p_tot");
            for (const auto& series : result.series) {
                std::printf(" %22s", trpa::to_string(series.strategy));
            }
            std::printf("\n");
            for (std::size_t i = 0; i < result.p_tot_grid.size(); ++i) {
                std::printf("%10.4g", result.p_tot_grid[i]);
                for (const auto& series : result.series) {
                    std::printf("   J=%-8.4g used=%-8.4g", series.objective[i],
                                series.power_used[i]);
                }
                std::printf("\n");
            }
            std::printf("wrote %s/sweep.csv\n", sweep_out.c_str());
            return 0;
        }

        if (dual_cmd->parsed()) {
            const trpa::Problem base = build_problem(dual_flags, true);
            double hi = dual_max;
            if (hi <= 0.0) {
                for (std::size_t i = 0; i < base.channels.size(); ++i) {
                    hi = std::max(hi, 2.0 * base.channels.weight(i) *
                                          base.channels.gains[i] *
                                          base.channels.targets[i] / trpa::kLn2);
                }
            }
            if (dual_points < 2 || dual_min <= 0.0 || hi <= dual_min) {
                throw std::invalid_argument("lambda grid: need points >= 2 and 0 < min < max");
            }
            std::vector<double> grid(static_cast<std::size_t>(dual_points));
            const double ratio = std::log(hi / dual_min) /
                                 static_cast<double>(dual_points - 1);
            for (int i = 0; i < dual_points; ++i) {
                grid[static_cast<std::size_t>(i)] =
                    dual_min * std::exp(ratio * static_cast<double>(i));
            }
            const auto points = trpa::dual_curve(base.channels, grid);
            trpa::write_dual_curve_csv(dual_out + "/dual_curve.csv", points);
            std::printf("wrote %s/dual_curve.csv (%d points, S spans [%.6g, %.6g])\n",
                        dual_out.c_str(), dual_points, points.back().total_power,
                        points.front().total_power);
            return 0;
        }

        if (mc_cmd->parsed()) {
            const trpa::FadingConfig config{mc_n, mc_snr, mc_seed, mc_realizations};
            const auto summaries = trpa::monte_carlo(config, mc_target, mc_ptot);
            trpa::write_cdf_csvs(mc_out, summaries);
            std::printf("%24s %12s %12s\n", "strategy", "median", "p90");
            for (const auto& summary : summaries) {
                std::printf("%24s %12.4f %12.4f\n", trpa::to_string(summary.strategy),
                            summary.median, summary.p90);
            }
            std::printf("wrote %s/cdf_<strategy>.csv\n", mc_out.c_str());
            return 0;
        }

        if (snr_cmd->parsed()) {
            if (snr_points < 1) throw std::invalid_argument("points: must be >= 1");
            std::vector<double> grid(static_cast<std::size_t>(snr_points));
            for (int i = 0; i < snr_points; ++i) {
                grid[static_cast<std::size_t>(i)] =
                    snr_points == 1
                        ? snr_min
                        : snr_min + (snr_max - snr_min) * static_cast<double>(i) /
                                        static_cast<double>(snr_points - 1);
            }
            const trpa::FadingConfig base{snr_n, snr_min, snr_seed, snr_realizations};
            const trpa::SnrSweep sweep =
                trpa::snr_sensitivity(grid, base, snr_target, snr_ptot, snr_realizations);
            trpa::write_snr_csv(snr_out + "/snr.csv", sweep);
            std::printf("%10s", "snr_db");
            for (const auto& series : sweep.series) {
                std::printf(" %22s", trpa::to_string(series.strategy));
            }
            std::printf("\n");
            for (std::size_t i = 0; i < sweep.snr_grid_db.size(); ++i) {
                std::printf("%10.4g", sweep.snr_grid_db[i]);
                for (const auto& series : sweep.series) {
                    std::printf(" %22.6g", series.mean_objective[i]);
                }
                std::printf("\n");
            }
            std::printf("wrote %s/snr.csv\n", snr_out.c_str());
            return 0;
        }

        if (bench_cmd->parsed()) {
            const auto rows = trpa::timing_bench(bench_grid, bench_runs, bench_seed);
            trpa::write_timing_csv(bench_out + "/timing.csv", rows);
            std::printf("%8s %14s %14s %12s\n", "n", "mean_s", "std_s", "iterations");
            for (const auto& row : rows) {
                std::printf("%8d %14.6e %14.6e %12d\n", row.n, row.mean_seconds,
                            row.std_seconds, row.iterations);
            }
            const trpa::WarmStartStudy study = trpa::warm_start_study();
            std::printf("warm-start study (%d steps, 1%% gain perturbation):\n",
                        study.steps);
            std::printf("  cold: %.2f bisection + bracket evals (%.2f bisection only)\n",
                        study.mean_cold_evaluations, study.mean_cold_bisection);
            std::printf("  warm: %.2f bisection + bracket evals (%.2f bisection only)\n",
                        study.mean_warm_evaluations, study.mean_warm_bisection);
            std::printf("wrote %s/timing.csv\n", bench_out.c_str());
            return 0;
        }

        if (hetero_cmd->parsed()) {
            const trpa::HeteroDemo demo = trpa::heterogeneous_demo();
            trpa::write_hetero_csv(hetero_out + "/hetero.csv", demo);
            std::printf("cap sum = %.10g\n", demo.caps_sum);
            std::printf("P_tot = %g: used %.10g, J = %.6g (%s)\n", demo.p_tot_tight,
                        demo.tight.power_used, demo.tight.objective,
                        trpa::to_string(demo.tight.regime));
            std::printf("P_tot = %g: used %.10g, J = %.6g (%s), unused %.10g\n",
                        demo.p_tot_slack, demo.slack.power_used, demo.slack.objective,
                        trpa::to_string(demo.slack.regime), demo.unused_slack);
            std::printf("wrote %s/hetero.csv\n", hetero_out.c_str());
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
