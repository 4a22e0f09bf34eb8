#include "trpa/model.hpp"

#include <cmath>
#include <stdexcept>

namespace trpa {

const char* to_string(Regime regime) {
    return regime == Regime::Slack ? "slack" : "tight";
}

void ChannelSet::validate() const {
    if (gains.empty()) {
        throw std::invalid_argument("gains: need at least one channel");
    }
    if (targets.size() != gains.size()) {
        throw std::invalid_argument("targets: length must match gains");
    }
    if (!weights.empty() && weights.size() != gains.size()) {
        throw std::invalid_argument("weights: length must match gains");
    }
    for (double a : gains) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw std::invalid_argument("gains: every entry must be finite and > 0");
        }
    }
    for (double t : targets) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw std::invalid_argument("targets: every entry must be finite and >= 0");
        }
    }
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("weights: every entry must be finite and > 0");
        }
    }
}

void Problem::validate() const {
    channels.validate();
    if (!(p_tot > 0.0) || !std::isfinite(p_tot)) {
        throw std::invalid_argument("p_tot: must be finite and > 0");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon: must be finite and > 0");
    }
}

double rate(double gain, double power) {
    if (!(gain > 0.0)) throw std::invalid_argument("gain: must be > 0");
    if (!(power >= 0.0)) throw std::invalid_argument("power: must be >= 0");
    return std::log1p(gain * power) / kLn2;
}

double cap(double gain, double target) {
    if (!(gain > 0.0)) throw std::invalid_argument("gain: must be > 0");
    if (!(target >= 0.0)) throw std::invalid_argument("target: must be >= 0");
    return (std::exp2(target) - 1.0) / gain;
}

std::vector<double> caps(const ChannelSet& channels) {
    std::vector<double> out(channels.size());
    for (std::size_t i = 0; i < channels.size(); ++i) {
        out[i] = cap(channels.gains[i], channels.targets[i]);
    }
    return out;
}

double caps_sum(const ChannelSet& channels) {
    double sum = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        sum += cap(channels.gains[i], channels.targets[i]);
    }
    return sum;
}

double objective(const ChannelSet& channels, std::span<const double> powers) {
    if (powers.size() != channels.size()) {
        throw std::invalid_argument("powers: length must match gains");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        const double dev = rate(channels.gains[i], powers[i]) - channels.targets[i];
        sum += channels.weight(i) * dev * dev;
    }
    return sum;
}

double curvature(double gain, double target, double power) {
    if (!(gain > 0.0)) throw std::invalid_argument("gain: must be > 0");
    if (!(target >= 0.0)) throw std::invalid_argument("target: must be >= 0");
    if (!(power >= 0.0)) throw std::invalid_argument("power: must be >= 0");
    const double y = 1.0 + gain * power;
    const double bracket = 1.0 - std::log(y) + target * kLn2;
    return 2.0 * gain * gain / (kLn2 * kLn2 * y * y) * bracket;
}

int second_derivative_sign(double gain, double target, double power) {
    const double value = curvature(gain, target, power);
    return (value > 0.0) - (value < 0.0);
}

}  // namespace trpa
