#pragma once

#include <string>

#include <json.hpp>

#include "trpa/model.hpp"

namespace trpa {

/// Reads a problem-instance document: fields `gains` (array), `targets`
/// (array, or scalar broadcast to N), optional `weights` (array), `p_tot`
/// (number), optional `epsilon` (default 1e-10). Unknown fields are
/// rejected; diagnostics name the offending field.
Problem load_problem(const std::string& path);
Problem problem_from_json(const nlohmann::json& doc);

nlohmann::json problem_to_json(const Problem& problem);

/// Self-contained allocation document (problem + result); recomputing the
/// objective from the emitted powers reproduces the emitted objective.
nlohmann::json allocation_to_json(const Problem& problem, const Allocation& allocation);

}  // namespace trpa
