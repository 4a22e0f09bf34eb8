#include "trpa/problem_io.hpp"

#include <fstream>
#include <stdexcept>

namespace trpa {
namespace {

std::vector<double> number_array(const nlohmann::json& value, const char* field) {
    if (!value.is_array()) {
        throw std::invalid_argument(std::string(field) + ": must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_number()) {
            throw std::invalid_argument(std::string(field) +
                                        ": must be an array of numbers");
        }
        out.push_back(item.get<double>());
    }
    return out;
}

}  // namespace

Problem problem_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("problem document: must be an object");
    }
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "gains" && key != "targets" && key != "weights" &&
            key != "p_tot" && key != "epsilon") {
            throw std::invalid_argument("unknown field: " + key);
        }
    }

    Problem problem;
    if (!doc.contains("gains")) throw std::invalid_argument("gains: required");
    problem.channels.gains = number_array(doc.at("gains"), "gains");

    if (!doc.contains("targets")) throw std::invalid_argument("targets: required");
    const nlohmann::json& targets = doc.at("targets");
    if (targets.is_number()) {
        problem.channels.targets.assign(problem.channels.gains.size(),
                                        targets.get<double>());
    } else {
        problem.channels.targets = number_array(targets, "targets");
    }

    if (doc.contains("weights")) {
        problem.channels.weights = number_array(doc.at("weights"), "weights");
    }

    if (!doc.contains("p_tot")) throw std::invalid_argument("p_tot: required");
    if (!doc.at("p_tot").is_number()) {
        throw std::invalid_argument("p_tot: must be a number");
    }
    problem.p_tot = doc.at("p_tot").get<double>();

    if (doc.contains("epsilon")) {
        if (!doc.at("epsilon").is_number()) {
            throw std::invalid_argument("epsilon: must be a number");
        }
        problem.epsilon = doc.at("epsilon").get<double>();
    }

    problem.validate();
    return problem;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("input: cannot open file " + path);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("input: " + path + " is not valid JSON (" +
                                    e.what() + ")");
    }
    return problem_from_json(doc);
}

nlohmann::json problem_to_json(const Problem& problem) {
    nlohmann::json doc;
    doc["gains"] = problem.channels.gains;
    doc["targets"] = problem.channels.targets;
    if (problem.channels.has_weights()) {
        doc["weights"] = problem.channels.weights;
    }
    doc["p_tot"] = problem.p_tot;
    doc["epsilon"] = problem.epsilon;
    return doc;
}

nlohmann::json allocation_to_json(const Problem& problem, const Allocation& allocation) {
    nlohmann::json doc;
    doc["problem"] = problem_to_json(problem);
    nlohmann::json& alloc = doc["allocation"];
    alloc["powers"] = allocation.powers;
    alloc["rates"] = allocation.rates;
    alloc["caps"] = caps(problem.channels);
    alloc["objective"] = allocation.objective;
    alloc["lambda"] = allocation.lambda;
    alloc["regime"] = to_string(allocation.regime);
    alloc["power_used"] = allocation.power_used;
    alloc["iterations"]["bisection"] = allocation.bisection_iterations;
    alloc["iterations"]["bracket"] = allocation.bracket_evaluations;
    return doc;
}

}  // namespace trpa
