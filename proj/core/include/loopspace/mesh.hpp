#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "loopspace/vec.hpp"

namespace loopspace {

using Triangle = std::array<std::size_t, 3>;

/// Triangle mesh in R^3.
///
/// weld_map is filled by build_mesh (grid vertex index -> welded vertex index)
/// and left empty for meshes read from disk.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<std::size_t> weld_map;
};

struct MeshInvariants {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  long long euler_char = 0;
  std::size_t boundary_loops = 0;
  bool orientable = true;

  friend bool operator==(const MeshInvariants&, const MeshInvariants&) = default;
};

/// Counts V, E, F, traces boundary components and decides orientability by
/// propagating triangle winding across shared edges.
///
/// Throws InputError for out-of-range or repeated triangle indices and for
/// unreferenced vertices, NonManifoldEdge when an edge has more than two
/// incident triangles.
MeshInvariants mesh_invariants(const Mesh& mesh);

/// Writes Wavefront OBJ: "v x y z" lines at 17 significant digits, then
/// "f i j k" lines with 1-based indices. Throws InputError on an empty mesh and
/// Error when the stream fails.
void export_obj(const Mesh& mesh, std::ostream& out);

/// Reads the "v" and "f" records of an OBJ file. Faces must be triangles;
/// texture/normal suffixes ("7/1/3") are ignored.
Mesh read_obj(std::istream& in);

} // namespace loopspace
