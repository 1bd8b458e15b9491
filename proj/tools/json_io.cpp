#include "json_io.hpp"

#include <string>

#include "loopspace/errors.hpp"

namespace loopspace::io {

using nlohmann::json;

json to_json(const QuotientPoint& q) {
  return {{"scheme", std::string(scheme_name(q.scheme))}, {"u", q.u}, {"v", q.v}, {"pole", q.is_pole}};
}

QuotientPoint quotient_point_from_json(const json& j) {
  try {
    QuotientPoint q{parse_scheme(j.at("scheme").get<std::string>()), j.at("u").get<double>(),
                    j.at("v").get<double>(), j.value("pole", false)};
    validate_canonical(q);
    return q;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad quotient point JSON: ") + e.what());
  }
}

json to_json(const MeshInvariants& inv) {
  return {{"V", inv.vertices},     {"E", inv.edges},
          {"F", inv.faces},        {"chi", inv.euler_char},
          {"boundary_loops", inv.boundary_loops}, {"orientable", inv.orientable}};
}

json to_json(const SurfaceClass& c) {
  return {{"euler_char", c.euler_char},
          {"orientable", c.orientable},
          {"boundary_count", c.boundary_count},
          {"genus", c.genus},
          {"name", c.name}};
}

json to_json(const RectangleWitness& w) {
  json vertices = json::array();
  for (const Vec2& v : w.vertices) vertices.push_back({v.x, v.y});
  return {{"pairs", {{w.pairs[0][0], w.pairs[0][1]}, {w.pairs[1][0], w.pairs[1][1]}}},
          {"vertices", vertices},
          {"midpoint_residual", w.midpoint_residual},
          {"length_residual", w.length_residual}};
}

RectangleWitness witness_from_json(const json& j) {
  try {
    RectangleWitness w;
    const json& pairs = j.at("pairs");
    const json& vertices = j.at("vertices");
    if (pairs.size() != 2 || vertices.size() != 4) throw InputError("witness needs 2 pairs and 4 vertices");
    for (std::size_t p = 0; p < 2; ++p) {
      if (pairs[p].size() != 2) throw InputError("each witness pair needs 2 parameters");
      w.pairs[p] = {pairs[p][0].get<double>(), pairs[p][1].get<double>()};
    }
    for (std::size_t k = 0; k < 4; ++k) {
      if (vertices[k].size() != 2) throw InputError("each witness vertex needs 2 coordinates");
      w.vertices[k] = {vertices[k][0].get<double>(), vertices[k][1].get<double>()};
    }
    w.midpoint_residual = j.at("midpoint_residual").get<double>();
    w.length_residual = j.at("length_residual").get<double>();
    return w;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad witness JSON: ") + e.what());
  }
}

} // namespace loopspace::io
