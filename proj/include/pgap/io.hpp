#pragma once

#include <string>

#include <json.hpp>

#include "pgap/envelope.hpp"
#include "pgap/functions.hpp"
#include "pgap/geometry.hpp"
#include "pgap/relaxation.hpp"

namespace pgap {

// %.17g: enough digits to round-trip binary64 exactly.
std::string format_double(double v);

// Inline JSON (first non-space byte is '{') or a path to a JSON file.
nlohmann::json load_spec(const std::string& text_or_path);

// {"kind": "power"|"exp"|"superpoly", "c": [...], "q": number (power only)}
FunctionSpec function_from_json(const nlohmann::json& j);
nlohmann::json function_to_json(const FunctionSpec& f);

// {"kind": "box", "v0": [...], "u": number}
// {"kind": "zonotope", "A": [[...], ...], "b": [...]}   (A given by rows)
// {"kind": "simplex", "vertices": [[...], ...]}
Domain domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const Domain& dom);

nlohmann::json report_to_json(const RelaxationReport& rep);
nlohmann::json sweep_row_to_json(const SweepRow& row);
nlohmann::json envelope_to_json(const PiecewiseLinearEnvelope& env);

}  // namespace pgap
