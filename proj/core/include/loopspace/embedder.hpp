#pragma once

#include "loopspace/mesh.hpp"
#include "loopspace/pair_space.hpp"
#include "loopspace/vec.hpp"

namespace loopspace {

/// Radii of the three surfaces. The defaults keep every chart an embedding.
struct EmbedConfig {
  double major_radius = 2.0;  // R: torus core circle, Mobius core circle
  double minor_radius = 1.0;  // r: torus tube, horn-torus tube
  double half_width = 0.5;    // w: Mobius band half width

  /// Throws InputError when the radii cannot embed `scheme`.
  void validate(Scheme scheme) const;
};

/// Point of the surface realizing q's scheme:
///  - torus: standard ring torus with radii (R, r).
///  - pinched_sphere: horn torus of tube radius r, pole at the origin.
///  - mobius: band of half width w around the circle of radius R; the
///    boundary circle d = 0 is the band's edge and d = 0.25 its core.
///
/// Throws InputError for a non-canonical q.
Vec3 embed(const QuotientPoint& q, const EmbedConfig& cfg = {});

/// Triangulates the (n+1) x (n+1) grid on the closed unit square, welds grid
/// vertices in the same class of `scheme` by exact index arithmetic, drops
/// triangles that collapse or duplicate after welding, and embeds each welded
/// vertex through its canonical point.
///
/// Every cell is split along its (i, j)-(i+1, j+1) diagonal. Welded vertices
/// are numbered in order of first appearance in the grid, where grid vertex
/// (i, j) has index i * (n + 1) + j. The mobius scheme meshes n < 5 at
/// resolution 2n, the coarsest grid whose fold is a simplicial complex.
Mesh build_mesh(Scheme scheme, int n, const EmbedConfig& cfg = {});

} // namespace loopspace
