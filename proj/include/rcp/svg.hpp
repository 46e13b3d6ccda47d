#pragma once

#include <string>

#include "json.hpp"
#include "rcp/instance.hpp"

namespace rcp {

// Figure for an instance plus the report that was computed from it:
// simplex outline, restriction polytope, admissible cone rays at its
// vertices and the selector vectors. 2D instances render directly; 3D
// instances render as the three coordinate-plane projections.
std::string render_svg(const InstanceData& inst, const nlohmann::json& report);

}  // namespace rcp
