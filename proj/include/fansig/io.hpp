#pragma once

#include <json.hpp>
#include <string>

#include "fansig/charclasses.hpp"
#include "fansig/fan.hpp"

// JSON serialization: the fan file format
//   {"rank": n, "rays": [[int, ...], ...], "max_cones": [[int, ...], ...]}
// with 0-based ray indices, plus report serialization helpers. Documents are
// emitted with insertion-ordered keys so a fixed input yields fixed bytes.

namespace fansig {

using Json = nlohmann::ordered_json;

// All three throw Error(ParseError) with a field or position diagnostic on
// malformed input; semantic fan violations surface as the fan_core codes.
Fan fan_from_json(const Json& doc);
Fan parse_fan_text(const std::string& text);
Fan load_fan_file(const std::string& path);

Json fan_to_json(const Fan& fan);

// Integers that fit a signed machine word serialize as JSON numbers; all
// other values as the canonical "p/q" string.
Json rational_to_json(const Rational& r);

Json theorem_report_to_json(const TheoremReport& rep);

}  // namespace fansig
