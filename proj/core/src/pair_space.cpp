#include "loopspace/pair_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "loopspace/errors.hpp"

namespace loopspace {

namespace {

constexpr double kEdgeSlack = 1e-12;

void require_finite(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw InputError("non-finite square coordinate");
}

// First coordinate of the pinched square is not periodic; inputs may only
// overshoot the edges by rounding noise.
double clamp_pinched_x(double x) {
  if (x < -kEdgeSlack || x > 1.0 + kEdgeSlack) {
    throw InputError("pinched-sphere x coordinate " + std::to_string(x) + " lies outside [0, 1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

double circle_gap(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

double torus_distance(SquarePoint p, SquarePoint q) {
  return std::hypot(circle_gap(wrap_unit(p.x), wrap_unit(q.x)), circle_gap(wrap_unit(p.y), wrap_unit(q.y)));
}

QuotientPoint canonical_mobius(double x, double y) {
  const double a = wrap_unit(x);
  const double b = wrap_unit(y);
  // Everything below depends only on the sorted pair, so swapping the inputs
  // yields bit-identical output.
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double gap = hi - lo;
  const double center = 0.5 * (lo + hi);

  double m = 0.0;
  double separation = 0.0;
  if (gap < 0.5) {
    m = center;
    separation = gap;
  } else if (gap > 0.5) {
    // The short arc runs forward from hi across the wrap point to lo.
    m = wrap_unit(center + 0.5);
    separation = 1.0 - gap;
  } else {
    // Antipodal: both midpoints are equally short; keep the one in [0, 0.5).
    m = center < 0.5 ? center : center - 0.5;
    separation = 0.5;
  }
  return {Scheme::mobius, m, 0.5 * separation, false};
}

void append_unique(std::vector<SquarePoint>& out, SquarePoint p) {
  if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
}

std::vector<double> edge_partners(double c) {
  if (c == 0.0 || c == 1.0) return {0.0, 1.0};
  return {c};
}

void append_translates(std::vector<SquarePoint>& out, double x, double y) {
  for (double px : edge_partners(x)) {
    for (double py : edge_partners(y)) append_unique(out, {px, py});
  }
}

} // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
  case Scheme::torus:
    return "torus";
  case Scheme::pinched_sphere:
    return "pinched-sphere";
  case Scheme::mobius:
    return "mobius";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "torus") return Scheme::torus;
  if (name == "pinched-sphere") return Scheme::pinched_sphere;
  if (name == "mobius") return Scheme::mobius;
  throw InputError("unknown scheme '" + std::string(name) + "' (expected torus, pinched-sphere or mobius)");
}

void validate_canonical(const QuotientPoint& q) {
  const auto fail = [&](const char* why) {
    throw InputError(std::string("non-canonical ") + std::string(scheme_name(q.scheme)) + " point (" +
                     std::to_string(q.u) + ", " + std::to_string(q.v) + "): " + why);
  };
  if (!std::isfinite(q.u) || !std::isfinite(q.v)) fail("non-finite coordinate");
  switch (q.scheme) {
  case Scheme::torus:
    if (q.is_pole) fail("torus has no pole");
    if (q.u < 0.0 || q.u >= 1.0 || q.v < 0.0 || q.v >= 1.0) fail("coordinates must lie in [0, 1)");
    break;
  case Scheme::pinched_sphere:
    if (q.is_pole) {
      if (q.u != 0.0 || q.v != 0.0) fail("pole must be stored as (0, 0)");
    } else if (q.u <= 0.0 || q.u >= 1.0 || q.v < 0.0 || q.v >= 1.0) {
      fail("need u in (0, 1) and v in [0, 1)");
    }
    break;
  case Scheme::mobius:
    if (q.is_pole) fail("mobius band has no pole");
    if (q.u < 0.0 || q.u >= 1.0) fail("midpoint must lie in [0, 1)");
    if (q.v < 0.0 || q.v > 0.25) fail("half separation must lie in [0, 0.25]");
    if (q.v == 0.25 && q.u >= 0.5) fail("antipodal midpoint must lie in [0, 0.5)");
    break;
  }
}

QuotientPoint make_quotient_point(Scheme scheme, double u, double v) {
  QuotientPoint q{scheme, u, v, false};
  if (scheme == Scheme::pinched_sphere && u == 0.0) q.is_pole = true;
  validate_canonical(q);
  return q;
}

QuotientPoint canonicalize(Scheme scheme, double x, double y) {
  require_finite(x, y);
  switch (scheme) {
  case Scheme::torus:
    return {Scheme::torus, wrap_unit(x), wrap_unit(y), false};
  case Scheme::pinched_sphere: {
    const double cx = clamp_pinched_x(x);
    if (cx == 0.0 || cx == 1.0) return {Scheme::pinched_sphere, 0.0, 0.0, true};
    return {Scheme::pinched_sphere, cx, wrap_unit(y), false};
  }
  case Scheme::mobius:
    return canonical_mobius(x, y);
  }
  throw InputError("unknown scheme");
}

double quotient_distance(Scheme scheme, SquarePoint p1, SquarePoint p2) {
  require_finite(p1.x, p1.y);
  require_finite(p2.x, p2.y);
  switch (scheme) {
  case Scheme::torus:
    return torus_distance(p1, p2);
  case Scheme::mobius:
    return std::min(torus_distance(p1, p2), torus_distance(p1, {p2.y, p2.x}));
  case Scheme::pinched_sphere: {
    const double x1 = clamp_pinched_x(p1.x);
    const double x2 = clamp_pinched_x(p2.x);
    const double direct = std::hypot(x1 - x2, circle_gap(wrap_unit(p1.y), wrap_unit(p2.y)));
    // A path may also run through the pole: to the nearer collapsed edge and
    // back out from the other point's nearer edge.
    const double via_pole = std::min(x1, 1.0 - x1) + std::min(x2, 1.0 - x2);
    return std::min(direct, via_pole);
  }
  }
  throw InputError("unknown scheme");
}

bool equivalent(Scheme scheme, SquarePoint p1, SquarePoint p2, double tol) {
  if (!(tol > 0.0)) throw InputError("equivalence tolerance must be positive");
  return quotient_distance(scheme, p1, p2) <= tol;
}

double quotient_distance(const QuotientPoint& q1, const QuotientPoint& q2) {
  if (q1.scheme != q2.scheme) throw InputError("cannot compare points of different schemes");
  return quotient_distance(q1.scheme, representative(q1), representative(q2));
}

QuotientPoint encode_pair(Scheme scheme, const PairOnLoop& pair) {
  if (scheme == Scheme::mobius && pair.ordered) {
    throw InputError("mobius scheme encodes unordered pairs");
  }
  if (scheme != Scheme::mobius && !pair.ordered) {
    throw InputError(std::string(scheme_name(scheme)) + " scheme encodes ordered pairs");
  }
  return canonicalize(scheme, pair.a.value(), pair.b.value());
}

SquarePoint representative(const QuotientPoint& q) {
  if (q.scheme == Scheme::mobius) return {wrap_unit(q.u - q.v), wrap_unit(q.u + q.v)};
  if (q.is_pole) return {0.0, 0.0};
  return {q.u, q.v};
}

DecodedPair decode(const QuotientPoint& q) {
  validate_canonical(q);
  const SquarePoint p = representative(q);
  return {PairOnLoop{CurveParam(p.x), CurveParam(p.y), q.scheme != Scheme::mobius}, q.is_pole};
}

Orbit orbit(Scheme scheme, double x, double y) {
  require_finite(x, y);
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) {
    throw InputError("orbit input must lie in the closed unit square");
  }
  FiniteOrbit result;
  switch (scheme) {
  case Scheme::torus:
    append_translates(result.points, x, y);
    break;
  case Scheme::pinched_sphere:
    if (x == 0.0 || x == 1.0) return CollapsedEdge{true, true};
    for (double py : edge_partners(y)) append_unique(result.points, {x, py});
    break;
  case Scheme::mobius:
    append_translates(result.points, x, y);
    append_translates(result.points, y, x);
    break;
  }
  return result;
}

} // namespace loopspace
