#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace loopspace {

struct EdgeLetter {
  char label = 'a';  // 'a'..'z'
  int exponent = 1;  // +1 or -1

  friend bool operator==(EdgeLetter, EdgeLetter) = default;
};

/// Boundary word of a single fundamental polygon, read counterclockwise.
/// Each label occurs once (a free boundary edge) or twice (a glued pair).
struct EdgeWord {
  std::vector<EdgeLetter> letters;

  friend bool operator==(const EdgeWord&, const EdgeWord&) = default;
};

struct SurfaceClass {
  long long euler_char = 0;
  bool orientable = true;
  std::size_t boundary_count = 0;
  /// Handles when orientable, crosscaps otherwise, of the surface obtained by
  /// capping every boundary circle with a disk.
  long long genus = 0;
  std::string name;

  friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
};

/// Lowercase letter = exponent +1, the same letter uppercase = exponent -1;
/// whitespace is ignored. "abAB" is a b a^-1 b^-1.
/// Throws ParseError for other characters, a label used three or more times,
/// or an empty word.
EdgeWord parse_edge_word(std::string_view text);

std::string to_string(const EdgeWord& word);

SurfaceClass classify(const EdgeWord& word);

/// "sphere", "torus", "genus-g surface", "projective plane", "Klein bottle",
/// "N-crosscap surface", plus "disk", "annulus", "Möbius band" and a
/// "... with b boundary component(s)" suffix for other bordered surfaces.
std::string canonical_name(const SurfaceClass& c);

} // namespace loopspace
