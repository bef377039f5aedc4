#pragma once

#include "ofdef/elliptic.hpp"
#include "ofdef/serialize.hpp"

#include <string>

namespace ofdef {

inline constexpr const char* kInstanceSchema = "ofdef.instance/1";

/// Builds an instance from a config document. Every numeric value must be an
/// exact integer or a "p/q" string; floats are rejected with the JSON path.
/// Does not run validate_instance.
RankOneInstance instance_from_json(const Json& config);

Json instance_to_json(const RankOneInstance& inst);

/// Reads and parses a config file, then validates it. Throws
/// ErrorKind::Validation naming the failing checks when validation fails.
RankOneInstance load_instance(const std::string& path);

/// Reads and parses without validating.
RankOneInstance read_instance(const std::string& path);

Json read_json_file(const std::string& path);

} // namespace ofdef
