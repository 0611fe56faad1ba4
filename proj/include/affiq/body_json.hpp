#pragma once

#include <json.hpp>

#include "affiq/bodies.hpp"

namespace affiq {

// {"kind": "vpoly"|"hpoly"|"ellipsoid", "dim": n, ...} with nested double
// arrays; doubles survive a round trip bit-exactly.
nlohmann::json body_to_json(const Body& b);
Body body_from_json(const nlohmann::json& j);

}  // namespace affiq
