#pragma once

#include <json.hpp>

#include "mintypes/derive.hpp"
#include "mintypes/inhabit.hpp"

namespace mintypes {

// {"rule", "env", "subject", "type", "premises"}; all values use the textio syntaxes.
nlohmann::json derivation_to_json(const Derivation& d);
// Throws Error (or ParseError) on malformed input. Subjects are read without renaming.
Derivation derivation_from_json(const nlohmann::json& j);

nlohmann::json run_to_json(const RunTree& r);
nlohmann::json solution_to_json(const Solution& s);

}  // namespace mintypes
