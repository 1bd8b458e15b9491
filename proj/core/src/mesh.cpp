#include "loopspace/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "loopspace/errors.hpp"

namespace loopspace {

namespace {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
  std::vector<std::size_t> parent_;
};

struct HalfEdge {
  std::uint64_t key;  // lo * V + hi
  std::size_t triangle;
  int direction;      // +1 when the triangle runs lo -> hi
};

struct Adjacency {
  std::size_t other;
  bool same_direction;
};

} // namespace

MeshInvariants mesh_invariants(const Mesh& mesh) {
  const std::size_t nv = mesh.vertices.size();
  const std::size_t nf = mesh.triangles.size();

  std::vector<bool> referenced(nv, false);
  std::vector<HalfEdge> half_edges;
  half_edges.reserve(3 * nf);
  for (std::size_t t = 0; t < nf; ++t) {
    const Triangle& tri = mesh.triangles[t];
    for (std::size_t k = 0; k < 3; ++k) {
      if (tri[k] >= nv) {
        throw InputError("triangle " + std::to_string(t) + " references missing vertex " + std::to_string(tri[k]));
      }
      referenced[tri[k]] = true;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw InputError("triangle " + std::to_string(t) + " repeats a vertex");
    }
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t a = tri[k];
      const std::size_t b = tri[(k + 1) % 3];
      const std::size_t lo = std::min(a, b);
      const std::size_t hi = std::max(a, b);
      half_edges.push_back({static_cast<std::uint64_t>(lo) * nv + hi, t, a < b ? 1 : -1});
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (!referenced[v]) throw InputError("vertex " + std::to_string(v) + " is not used by any triangle");
  }

  std::sort(half_edges.begin(), half_edges.end(), [](const HalfEdge& a, const HalfEdge& b) {
    return a.key != b.key ? a.key < b.key : a.triangle < b.triangle;
  });

  MeshInvariants inv;
  inv.vertices = nv;
  inv.faces = nf;

  DisjointSets boundary(nv);
  std::vector<bool> on_boundary(nv, false);
  std::vector<std::vector<Adjacency>> neighbors(nf);
  for (std::size_t begin = 0; begin < half_edges.size();) {
    std::size_t end = begin;
    while (end < half_edges.size() && half_edges[end].key == half_edges[begin].key) ++end;
    const std::size_t lo = half_edges[begin].key / nv;
    const std::size_t hi = half_edges[begin].key % nv;
    const std::size_t count = end - begin;
    ++inv.edges;
    if (count > 2) throw NonManifoldEdge(lo, hi, count);
    if (count == 1) {
      boundary.unite(lo, hi);
      on_boundary[lo] = on_boundary[hi] = true;
    } else {
      const HalfEdge& e0 = half_edges[begin];
      const HalfEdge& e1 = half_edges[begin + 1];
      const bool same = e0.direction == e1.direction;
      neighbors[e0.triangle].push_back({e1.triangle, same});
      neighbors[e1.triangle].push_back({e0.triangle, same});
    }
    begin = end;
  }

  std::vector<bool> loop_root(nv, false);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!on_boundary[v]) continue;
    const std::size_t root = boundary.find(v);
    if (!loop_root[root]) {
      loop_root[root] = true;
      ++inv.boundary_loops;
    }
  }

  // Two-color the triangles: +1 keeps the stored winding, -1 flips it.
  // Neighbors stored with the same edge direction must take opposite colors.
  std::vector<int> flip(nf, 0);
  for (std::size_t seed = 0; seed < nf && inv.orientable; ++seed) {
    if (flip[seed] != 0) continue;
    flip[seed] = 1;
    std::deque<std::size_t> queue{seed};
    while (!queue.empty() && inv.orientable) {
      const std::size_t t = queue.front();
      queue.pop_front();
      for (const Adjacency& adj : neighbors[t]) {
        const int wanted = adj.same_direction ? -flip[t] : flip[t];
        if (flip[adj.other] == 0) {
          flip[adj.other] = wanted;
          queue.push_back(adj.other);
        } else if (flip[adj.other] != wanted) {
          inv.orientable = false;
          break;
        }
      }
    }
  }

  inv.euler_char = static_cast<long long>(inv.vertices) - static_cast<long long>(inv.edges) +
                   static_cast<long long>(inv.faces);
  return inv;
}

void export_obj(const Mesh& mesh, std::ostream& out) {
  if (mesh.vertices.empty() || mesh.triangles.empty()) throw InputError("empty mesh");
  char buffer[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buffer, sizeof buffer, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buffer;
  }
  for (const Triangle& tri : mesh.triangles) {
    out << "f " << tri[0] + 1 << ' ' << tri[1] + 1 << ' ' << tri[2] + 1 << '\n';
  }
  out.flush();
  if (!out) throw Error("failed to write OBJ output");
}

Mesh read_obj(std::istream& in) {
  Mesh mesh;
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& why) {
    throw InputError("OBJ line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 v;
      if (!(fields >> v.x >> v.y >> v.z)) fail("expected three vertex coordinates");
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<std::size_t> corners;
      std::string token;
      while (fields >> token) {
        const std::string head = token.substr(0, token.find('/'));
        long long index = 0;
        try {
          index = std::stoll(head);
        } catch (const std::exception&) {
          fail("bad face index '" + token + "'");
        }
        if (index < 0) index += static_cast<long long>(mesh.vertices.size()) + 1;
        if (index < 1) fail("face index out of range");
        corners.push_back(static_cast<std::size_t>(index - 1));
      }
      if (corners.size() != 3) fail("only triangular faces are supported");
      mesh.triangles.push_back({corners[0], corners[1], corners[2]});
    }
  }
  return mesh;
}

} // namespace loopspace
