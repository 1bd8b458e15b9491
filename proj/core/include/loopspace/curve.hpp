#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loopspace/vec.hpp"

namespace loopspace {

/// Position on a closed curve as a fraction of its total arc length.
/// Always stored reduced into [0, 1).
class CurveParam {
public:
  CurveParam() = default;
  explicit CurveParam(double t) : t_(wrap_unit(t)) {}

  double value() const { return t_; }

  friend bool operator==(CurveParam, CurveParam) = default;

private:
  double t_ = 0.0;
};

/// A closed planar curve evaluated by normalized arc length.
///
/// Two kinds exist: analytic presets (circle, ellipse, superellipse), which
/// carry an arc-length table over their native angle parameter, and closed
/// polylines, whose closing segment is implicit. Instances are immutable.
///
/// Self-intersecting polylines are accepted as given; simplicity is not
/// checked.
class ClosedCurve {
public:
  enum class Kind { circle, ellipse, superellipse, polyline };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  /// Polyline vertices in storage order; empty for presets.
  const std::vector<Vec2>& vertices() const { return vertices_; }

  double total_length() const { return total_length_; }

  /// Cumulative arc length at each table knot; strictly increasing, first
  /// entry 0, last entry total_length().
  const std::vector<double>& arc_table() const { return arc_length_; }

  Vec2 eval(CurveParam t) const;
  Vec2 eval(double t) const { return eval(CurveParam(t)); }

  friend ClosedCurve make_preset(std::string_view name, std::span<const double> params);
  friend ClosedCurve load_polyline(std::vector<Vec2> vertices);

private:
  ClosedCurve() = default;

  Vec2 point_at_angle(double phi) const;
  double speed_at_angle(double phi) const;
  double integrate_speed(double a, double b) const;
  void build_arc_table();
  void refine_interval(double a, double b, double whole, double abs_tol, int depth,
                       std::vector<double>& knots, std::vector<double>& lengths) const;
  Vec2 eval_preset(double s) const;
  Vec2 eval_polyline(double s) const;

  Kind kind_ = Kind::polyline;
  std::string name_;
  std::vector<double> params_;
  std::vector<Vec2> vertices_;

  // Presets: native angle at each knot. Polylines: unused (the knots are the
  // vertices themselves).
  std::vector<double> arc_param_;
  std::vector<double> arc_length_;
  double total_length_ = 0.0;
};

/// Builds "circle" (r), "ellipse" (a, b) or "superellipse" (a, b, exponent).
/// eval(0) is the point on the positive x axis; traversal is counterclockwise.
ClosedCurve make_preset(std::string_view name, std::span<const double> params);

/// Builds a closed polygon from at least three vertices. The closing segment
/// from the last vertex back to the first is implicit.
ClosedCurve load_polyline(std::vector<Vec2> vertices);

/// Reads "x,y" records, one per line, with an optional "x,y" header line.
ClosedCurve read_polyline_csv(std::istream& in);

/// Parses a curve spec: "circle:r", "ellipse:a,b", "superellipse:a,b,p" or
/// "file:PATH" (polyline CSV).
ClosedCurve parse_curve_spec(std::string_view spec);

} // namespace loopspace
