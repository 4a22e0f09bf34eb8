#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trpa {

/// Natural log of 2; rates are in bits, the KKT algebra is in nats.
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

/// Budget regimes of the optimal allocation: either the budget covers the
/// sum of per-channel caps (constraint slack, every target met exactly) or
/// it does not (constraint tight, positive residual objective).
enum class Regime { Slack, Tight };

const char* to_string(Regime regime);

/// Static problem data: per-channel gain-to-noise ratios a_i, target
/// spectral efficiencies T_i (bits/s/Hz) and optional priority weights.
/// An empty `weights` vector means unit weights throughout.
struct ChannelSet {
    std::vector<double> gains;
    std::vector<double> targets;
    std::vector<double> weights;

    std::size_t size() const { return gains.size(); }
    bool has_weights() const { return !weights.empty(); }
    double weight(std::size_t i) const { return weights.empty() ? 1.0 : weights[i]; }

    /// Throws std::invalid_argument naming the offending field if any
    /// invariant is violated (a_i > 0, T_i >= 0, w_i > 0, equal lengths, N >= 1).
    void validate() const;
};

/// A ChannelSet plus the total power budget and the bisection tolerance on
/// |S(lambda) - p_tot|.
struct Problem {
    ChannelSet channels;
    double p_tot = 0.0;
    double epsilon = 1e-10;

    void validate() const;
};

/// Solver output. `rates` is always recomputed from `powers`, never copied
/// from targets. For baseline allocators `lambda` carries the method's own
/// dual value or water level (0 where none exists).
struct Allocation {
    std::vector<double> powers;
    std::vector<double> rates;
    double objective = 0.0;
    double lambda = 0.0;
    Regime regime = Regime::Slack;
    int bisection_iterations = 0;
    /// Bracket-phase S(lambda) evaluations (doubling steps for a cold solve,
    /// validation/expansion steps for a warm one).
    int bracket_evaluations = 0;
    double power_used = 0.0;
};

/// Shannon spectral efficiency log2(1 + gain * power) in bits/s/Hz.
double rate(double gain, double power);

/// Power (2^target - 1) / gain that meets the target exactly; the optimal
/// allocation never exceeds it.
double cap(double gain, double target);

std::vector<double> caps(const ChannelSet& channels);
double caps_sum(const ChannelSet& channels);

/// Weighted squared rate deviation sum_i w_i (r_i - T_i)^2 in bits^2.
double objective(const ChannelSet& channels, std::span<const double> powers);

/// Second derivative of the per-channel deviation term f_i(p) = w (r - t)^2
/// with w = 1. Nonnegative on [0, cap(gain, target)].
double curvature(double gain, double target, double power);

/// Sign (-1, 0, +1) of curvature(); flips only past the inflection point
/// (e * 2^target - 1) / gain, which lies strictly above the cap.
int second_derivative_sign(double gain, double target, double power);

}  // namespace trpa
