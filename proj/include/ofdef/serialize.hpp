#pragma once

// JSON forms of the exact objects. Every number is written as a decimal
// string ("p" or "p/q"); readers reject JSON numbers where a rational is
// expected, so no floating-point value can enter or leave.

#include "ofdef/elliptic.hpp"
#include "ofdef/ideal.hpp"

#include <json.hpp>

#include <string>

namespace ofdef {

using Json = nlohmann::json;

Json to_json(const Int& v);
Json to_json(const Rat& v);
/// Power-basis coordinates.
Json to_json(const FieldElement& a);
/// {"field", "denominator", "hnf": columns}
Json to_json(const FractionalIdeal& I);
Json to_json(const PrimeIdeal& p);
/// [{"p", "f", "e", "generators", "exponent"}]
Json to_json(const PrimeFactorization& f);
/// "infinity" or {"x", "y"}
Json to_json(const CurvePoint& P);
Json to_json(const ValidationReport& rep);

/// Readers; `path` names the location for error messages.
Rat rational_from_json(const Json& j, const std::string& path);
Int integer_from_json(const Json& j, const std::string& path);
long small_integer_from_json(const Json& j, const std::string& path);
FieldElement element_from_json(const FieldPtr& K, const Json& j, const std::string& path);
FractionalIdeal ideal_from_json(const FieldPtr& K, const Json& j, const std::string& path);
CurvePoint point_from_json(const FieldPtr& K, const Json& j, const std::string& path);

/// Looks up a required key.
const Json& field_at(const Json& j, const std::string& key, const std::string& path);

} // namespace ofdef
