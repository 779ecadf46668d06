#pragma once

#include "svagen/ast.hpp"

#include <json.hpp>

namespace svagen {

// JSON tree interchange for property ASTs, used between CLI stages.
nlohmann::ordered_json node_to_json(const PropertyNode &node);
PropertyNode node_from_json(const nlohmann::json &j);

} // namespace svagen
