#pragma once

// JSON and DOT forms of circuits, bundles, reports and certificates.

#include <json.hpp>
#include <string>

#include "ncl/builders.hpp"
#include "ncl/measure.hpp"
#include "ncl/pit.hpp"
#include "ncl/transforms.hpp"

namespace ncl {

using Json = nlohmann::ordered_json;

/// {"nvars", "modulus", "gates", "outputs"}; gate order is topological.
Json to_json(const Circuit& c);
/// Accepts "outputs" as an array of ids or an object whose values are ids;
/// extra keys are ignored. Throws ParseError on malformed input.
Circuit circuit_from_json(const Json& j);
Circuit parse_circuit(std::string_view text);

/// Mul edges carry "L"/"R" labels.
std::string to_dot(const Circuit& c);

/// Circuit fields inline, "outputs" as {"var": gate} and a "meta" object.
Json to_json(const DerivativeBundle& b);
Json to_json(const MeasureReport& r);
Json to_json(const Certificate& c);
Json to_json(const Telemetry& t);
Json to_json(const Metrics& m);
Json to_json(const PitVerdict& v);
Json to_json(const LemmaCheck& l);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace ncl
