#include "loopspace/edge_word.hpp"

#include <array>
#include <cctype>
#include <numeric>
#include <string>

#include "loopspace/errors.hpp"

namespace loopspace {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }

  std::vector<std::size_t> parent;
};

std::string plural(std::size_t count, const char* noun) {
  return std::to_string(count) + " " + noun + (count == 1 ? "" : "s");
}

} // namespace

EdgeWord parse_edge_word(std::string_view text) {
  EdgeWord word;
  std::array<int, 26> uses{};
  for (char ch : text) {
    const auto uch = static_cast<unsigned char>(ch);
    if (std::isspace(uch)) continue;
    if (ch >= 'a' && ch <= 'z') {
      word.letters.push_back({ch, 1});
    } else if (ch >= 'A' && ch <= 'Z') {
      word.letters.push_back({static_cast<char>(ch - 'A' + 'a'), -1});
    } else {
      throw ParseError(std::string("illegal character '") + ch + "'");
    }
    const char label = word.letters.back().label;
    if (++uses[static_cast<std::size_t>(label - 'a')] == 3) {
      std::size_t total = 0;
      for (char c : text) total += (std::tolower(static_cast<unsigned char>(c)) == label) ? 1 : 0;
      throw ParseError(std::string("label '") + label + "' appears " + std::to_string(total) + " times");
    }
  }
  if (word.letters.empty()) throw ParseError("empty word");
  return word;
}

std::string to_string(const EdgeWord& word) {
  std::string out;
  out.reserve(word.letters.size());
  for (const EdgeLetter& l : word.letters) {
    out.push_back(l.exponent > 0 ? l.label : static_cast<char>(l.label - 'a' + 'A'));
  }
  return out;
}

SurfaceClass classify(const EdgeWord& word) {
  const std::size_t n = word.letters.size();
  if (n == 0) throw ParseError("empty word");

  // Corner i starts edge i and ends edge i - 1. An edge read with exponent +1
  // runs from its start corner to its end corner; -1 reverses it.
  const auto tail = [&](std::size_t i) { return word.letters[i].exponent > 0 ? i : (i + 1) % n; };
  const auto head = [&](std::size_t i) { return word.letters[i].exponent > 0 ? (i + 1) % n : i; };

  std::array<std::vector<std::size_t>, 26> occurrences;
  for (std::size_t i = 0; i < n; ++i) {
    occurrences[static_cast<std::size_t>(word.letters[i].label - 'a')].push_back(i);
  }

  UnionFind corners(n);
  long long labels = 0;
  bool orientable = true;
  std::vector<std::size_t> free_edges;
  for (const auto& occ : occurrences) {
    if (occ.empty()) continue;
    ++labels;
    if (occ.size() > 2) throw ParseError("label used more than twice");
    if (occ.size() == 1) {
      free_edges.push_back(occ[0]);
      continue;
    }
    corners.unite(tail(occ[0]), tail(occ[1]));
    corners.unite(head(occ[0]), head(occ[1]));
    if (word.letters[occ[0]].exponent == word.letters[occ[1]].exponent) orientable = false;
  }

  long long vertex_classes = 0;
  for (std::size_t i = 0; i < n; ++i) vertex_classes += corners.find(i) == i ? 1 : 0;

  // Boundary circles: components of the graph that the free edges form on the
  // identified vertices.
  UnionFind circles(n);
  std::vector<bool> touched(n, false);
  for (std::size_t e : free_edges) {
    const std::size_t a = corners.find(e);
    const std::size_t b = corners.find((e + 1) % n);
    circles.unite(a, b);
    touched[a] = touched[b] = true;
  }
  std::size_t boundary = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (touched[v] && circles.find(v) == v) ++boundary;
  }

  SurfaceClass c;
  c.euler_char = vertex_classes - labels + 1;
  c.orientable = orientable;
  c.boundary_count = boundary;
  const long long capped = c.euler_char + static_cast<long long>(boundary);
  c.genus = orientable ? (2 - capped) / 2 : 2 - capped;
  c.name = canonical_name(c);
  return c;
}

std::string canonical_name(const SurfaceClass& c) {
  const long long capped = c.euler_char + static_cast<long long>(c.boundary_count);
  const bool consistent = c.orientable ? (capped <= 2 && capped % 2 == 0 && c.genus == (2 - capped) / 2)
                                       : (capped <= 1 && c.genus == 2 - capped);
  if (!consistent) {
    return "surface(χ=" + std::to_string(c.euler_char) + ", orientable=" + (c.orientable ? "true" : "false") +
           ", boundary=" + std::to_string(c.boundary_count) + ")";
  }

  if (c.boundary_count == 1 && !c.orientable && c.euler_char == 0) return "Möbius band";
  if (c.boundary_count == 1 && c.orientable && c.euler_char == 1) return "disk";
  if (c.boundary_count == 2 && c.orientable && c.euler_char == 0) return "annulus";

  std::string closed;
  if (c.orientable) {
    if (c.genus == 0) {
      closed = "sphere";
    } else if (c.genus == 1) {
      closed = "torus";
    } else {
      closed = "genus-" + std::to_string(c.genus) + " surface";
    }
  } else if (c.genus == 1) {
    closed = "projective plane";
  } else if (c.genus == 2) {
    closed = "Klein bottle";
  } else {
    closed = std::to_string(c.genus) + "-crosscap surface";
  }
  if (c.boundary_count == 0) return closed;
  return closed + " with " + plural(c.boundary_count, "boundary component");
}

} // namespace loopspace
