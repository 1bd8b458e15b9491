#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "loopspace/curve.hpp"

namespace loopspace {

/// The three ways of gluing the unit square [0,1]^2 of loop-position pairs.
///
///  - torus: ordered pairs; left/right edges glued and bottom/top edges glued.
///  - pinched_sphere: y is periodic, and the two vertical edges x = 0 and
///    x = 1 are each collapsed and then pressed together into one pole.
///  - mobius: unordered pairs {x, y} on the loop; the diagonal x = y is the
///    boundary circle.
enum class Scheme { torus, pinched_sphere, mobius };

inline constexpr double kDefaultTolerance = 1e-9;

std::string_view scheme_name(Scheme scheme);
/// Accepts "torus", "pinched-sphere" and "mobius".
Scheme parse_scheme(std::string_view name);

struct SquarePoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(SquarePoint, SquarePoint) = default;
};

/// Canonical representative of one point of a glued square.
///
/// Canonical domains:
///  - torus: u, v in [0, 1).
///  - pinched_sphere: pole (u = v = 0), or u in (0, 1) and v in [0, 1).
///  - mobius: u = m in [0, 1) is the midpoint of the shorter arc between the
///    two loop positions and v = d in [0, 0.25] is half their separation.
///    When d = 0.25 the two midpoints are antipodal and m is kept in [0, 0.5).
struct QuotientPoint {
  Scheme scheme = Scheme::torus;
  double u = 0.0;
  double v = 0.0;
  bool is_pole = false;

  friend bool operator==(const QuotientPoint&, const QuotientPoint&) = default;
};

/// Throws InputError unless q lies in its scheme's canonical domain.
void validate_canonical(const QuotientPoint& q);

/// Builds a validated QuotientPoint from chart coordinates. For
/// pinched_sphere, u = 0 denotes the pole (v must then be 0 too).
QuotientPoint make_quotient_point(Scheme scheme, double u, double v);

struct PairOnLoop {
  CurveParam a;
  CurveParam b;
  bool ordered = true;
};

struct DecodedPair {
  PairOnLoop pair;
  /// Set when the decoded point is the pinched-sphere pole; pair is then the
  /// designated edge representative (0, 0).
  bool pole = false;
};

/// Equivalence class given as explicit representatives in the closed square.
struct FiniteOrbit {
  std::vector<SquarePoint> points;
};

/// Equivalence class consisting of whole square edges.
struct CollapsedEdge {
  bool left = false;   // x = 0
  bool right = false;  // x = 1
};

using Orbit = std::variant<FiniteOrbit, CollapsedEdge>;

/// Canonical representative of the square point (x, y). For mobius, (x, y)
/// is read as the unordered pair {x mod 1, y mod 1}. pinched_sphere rejects
/// x outside [0, 1] by more than 1e-12.
QuotientPoint canonicalize(Scheme scheme, double x, double y);
inline QuotientPoint canonicalize(Scheme scheme, SquarePoint p) { return canonicalize(scheme, p.x, p.y); }

/// Quotient metric: the smallest Euclidean distance between representatives
/// of the two classes.
double quotient_distance(Scheme scheme, SquarePoint p1, SquarePoint p2);

bool equivalent(Scheme scheme, SquarePoint p1, SquarePoint p2, double tol = kDefaultTolerance);

/// Distance between two canonical points, measured through their square
/// representatives.
double quotient_distance(const QuotientPoint& q1, const QuotientPoint& q2);

QuotientPoint encode_pair(Scheme scheme, const PairOnLoop& pair);
DecodedPair decode(const QuotientPoint& q);

/// A square representative of q: (u, v) for torus and pinched_sphere, (0, 0)
/// for the pole, (m - d, m + d) reduced mod 1 for mobius.
SquarePoint representative(const QuotientPoint& q);

/// Every representative of the class of (x, y) inside the closed unit square.
Orbit orbit(Scheme scheme, double x, double y);

} // namespace loopspace
