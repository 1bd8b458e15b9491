#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "loopspace/curve.hpp"
#include "loopspace/pair_space.hpp"
#include "loopspace/vec.hpp"

namespace loopspace {

/// Midpoint and half length of the chord joining two curve points.
struct ChordImage {
  Vec2 midpoint;
  double half_length = 0.0;
};

/// Chord map of an unordered pair. Symmetric in its two parameters bit for
/// bit, so it is well defined on the Mobius band of unordered pairs.
ChordImage vaughan_map(const ClosedCurve& curve, const PairOnLoop& pair);
ChordImage chord_image(const ClosedCurve& curve, double t1, double t2);

struct RectangleOptions {
  int grid_n = 256;
  double tol = 1e-8;
  /// Smallest Mobius quotient distance allowed between the two diagonals.
  double min_separation = 1e-3;
  /// Best-effort preference for the ratio long side / short side (>= 1).
  /// Witnesses within 5% of it are preferred; otherwise the first witness
  /// found is returned.
  std::optional<double> aspect_ratio;
  /// Upper bound on least-squares refinements per search.
  int max_refinements = 20000;

  void validate() const;
};

/// Two unordered pairs whose chords share midpoint and length. The chords are
/// the rectangle's diagonals, so the vertices in cyclic order are
/// eval(t1), eval(t3), eval(t2), eval(t4).
struct RectangleWitness {
  std::array<std::array<double, 2>, 2> pairs{};
  std::array<Vec2, 4> vertices{};
  double midpoint_residual = 0.0;
  double length_residual = 0.0;  // difference of the diagonal lengths
};

/// Evaluates the vertices and residuals of the diagonals {t1, t2}, {t3, t4}.
RectangleWitness make_witness(const ClosedCurve& curve, double t1, double t2, double t3, double t4);

struct NotFound {
  double best_residual = 0.0;
};

using RectangleResult = std::variant<RectangleWitness, NotFound>;

/// Searches the Mobius band of unordered pairs for two distinct pairs with the
/// same chord image. Samples (m, d) on a grid_n x grid_n grid, collects
/// nearby images through a uniform spatial hash, and refines candidates in
/// grid order by damped least squares until one reaches `tol`.
/// Deterministic for a given curve and options. Throws InputError for invalid
/// options.
RectangleResult find_rectangle(const ClosedCurve& curve, const RectangleOptions& opts = {});

struct RectangleReport {
  std::array<double, 4> vertex_distance{};  // to the curve, by dense resampling
  double midpoint_residual = 0.0;
  double diagonal_residual = 0.0;
  std::array<double, 2> side_lengths{};
  double diagonal_angle = 0.0;  // radians in [0, pi/2]
  bool passed = false;
  std::string failure;  // empty when passed
};

RectangleReport verify_rectangle(const ClosedCurve& curve, const RectangleWitness& w, double tol);

} // namespace loopspace
