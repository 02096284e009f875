#pragma once

// JSON input and canonical JSON output. Objects are written with sorted keys
// and integers only, so equal values serialize to equal bytes.

#include "belowz/cone.hpp"
#include "belowz/descent.hpp"
#include "belowz/group_schemes.hpp"
#include "belowz/monoid.hpp"
#include "belowz/schemes.hpp"

#include "json.hpp"

#include <string>

namespace belowz {

using Json = nlohmann::json;

/// Reads and parses a file. Syntax errors report "path:line:column: message".
Json read_json_file(const std::string& path);
/// Parses text; `origin` names the source in error messages.
Json parse_json(const std::string& text, const std::string& origin);

/// A built-in name or a {"kind": ...} object.
MonoidPtr monoid_from_json(const Json& j);
/// A built-in name, inline JSON, or the path of a JSON file.
MonoidPtr parse_monoid_spec(const std::string& spec);
/// {"dim": n, "rays": [[...]], "cones": [[ray indices]]}; faces are added.
Fan fan_from_json(const Json& j);
/// {"base": monoid, "legs": [{"target": monoid, "images": [...]}]}, images
/// listed per element of the base by target element name or index.
Cover cover_from_json(const Json& j);

Json to_json(const ExponentVector& v);
Json to_json(const Monoid& m);
Json to_json(const Fan& f);
Json to_json(const FanVerdict& v);
Json to_json(const MonoidHom& f);
Json to_json(const SchemeAtlas& x);
Json to_json(const AtlasVerdict& v);
Json to_json(const PointSet& p);
Json to_json(const PointCount& c);
Json to_json(const GroupPoints& g, bool with_elements);
Json to_json(const FiniteASet& s);
Json to_json(const Cover& c);
Json to_json(const LabVerdict& v);
Json to_json(const DescentDatum& d);

/// Two-space indentation and a trailing newline.
std::string canonical_dump(const Json& j);

}  // namespace belowz
