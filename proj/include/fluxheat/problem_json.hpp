#pragma once

#include <json.hpp>

#include "fluxheat/problem.hpp"

namespace fluxheat {

/// Parse {"phi", "flux", "h", "variant"}; any other key anywhere throws ConfigError.
/// For "PTilde" the phi and h objects describe the underlying P data.
ProblemSpec spec_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const ProblemSpec& spec);

TimeFunction time_function_from_json(const nlohmann::json& j);
nlohmann::json time_function_to_json(const TimeFunction& f);

}  // namespace fluxheat
