#pragma once

#include <json.hpp>

#include "padicint/integrate.hpp"
#include "padicint/kcells.hpp"
#include "padicint/poincare.hpp"
#include "padicint/presburger.hpp"

namespace padicint {

using Json = nlohmann::ordered_json;

// Γ-cells: {"lower": int|null, "upper": int|null, "mod": int, "res": int};
// unions are arrays.
GammaCell gamma_cell_from_json(const Json& j);
Json to_json(const GammaCell& c);
GammaCellUnion gamma_union_from_json(const Json& j);

// K-cells: {"center": "a/b", "lower", "upper", "mod", "res", "acDepth",
// "acValue", "p"}. A single object or an array of them.
KCell kcell_from_json(const Json& j);
Json to_json(const KCell& c);
std::vector<KCell> kcells_from_json(const Json& j);

// {"p": 2, "variables": [{"name": "x1", "region": "unit_ball" | [kcell...]},
//                        {"name": "g1", "region": [gamma cell...]}]}
// where Γ bounds may be integers or {"lin": [a, k, n, delta], "var": "g1"}.
Domain domain_from_json(const Json& j, std::optional<long> prime_override = std::nullopt);

Json to_json(const RationalFunctionT& r, const Prime& prime);
Json to_json(const PoincareReport& report);

/// Parses text, reporting syntax errors as ParseError with line and column.
Json parse_json_text(const std::string& text);

}  // namespace padicint
