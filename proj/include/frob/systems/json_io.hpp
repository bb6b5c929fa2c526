#pragma once

#include "frob/systems/system.hpp"

#include "json.hpp"

namespace frob {

using Json = nlohmann::ordered_json;

// {kind, vars | indep+dep, entries, metadata{name, excluded_locus, warnings}}
Json system_to_json(const System& s);
System system_from_json(const nlohmann::json& j);

Json locus_to_json(const Locus& l);

}  // namespace frob
