#pragma once

#include "json.hpp"

#include <string>

#include "entropia/convex_body.hpp"

namespace entropia {

/// {"dim": n, "directions": [[...]], "radial": [...]}; without "directions"
/// the canonical grid with radial.size() samples is used.
StarBody body_from_json(const nlohmann::json& j);
nlohmann::json body_to_json(const StarBody& k);
StarBody load_body(const std::string& path);

}  // namespace entropia
