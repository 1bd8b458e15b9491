#pragma once

#include <json.hpp>

#include "loopspace/edge_word.hpp"
#include "loopspace/inscribed.hpp"
#include "loopspace/mesh.hpp"
#include "loopspace/pair_space.hpp"

namespace loopspace::io {

// {"scheme": ..., "u": ..., "v": ..., "pole": bool}
nlohmann::json to_json(const QuotientPoint& q);
QuotientPoint quotient_point_from_json(const nlohmann::json& j);

// {"V", "E", "F", "chi", "boundary_loops", "orientable"}
nlohmann::json to_json(const MeshInvariants& inv);

// {"euler_char", "orientable", "boundary_count", "genus", "name"}
nlohmann::json to_json(const SurfaceClass& c);

// {"pairs": [[t1,t2],[t3,t4]], "vertices": [[x,y] x4], "midpoint_residual", "length_residual"}
nlohmann::json to_json(const RectangleWitness& w);
RectangleWitness witness_from_json(const nlohmann::json& j);

} // namespace loopspace::io
