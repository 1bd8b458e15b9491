#include "loopspace/curve.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>

#include "loopspace/errors.hpp"

namespace loopspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640};
constexpr std::array<double, 5> kGaussWeights = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688};

constexpr std::size_t kMinArcSamples = 1024;
constexpr std::size_t kMaxArcSamples = std::size_t{1} << 16;
constexpr double kTotalLengthRelTol = 1e-10;
constexpr int kMaxRefineDepth = 200;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

} // namespace

namespace {

// Superellipse quadrant chart. The table parameter psi advances by pi/2 per
// quadrant; inside quadrant k the polar angle is k pi/2 + alpha with
// alpha = (pi/2) S(u), S(u) = 3u^2 - 2u^3. Since S(u) + S(1 - u) = 1, the
// complement pi/2 - alpha is (pi/2) S(1 - u), so both cos(alpha) and
// sin(alpha) are taken as sines of small arguments and keep full relative
// accuracy next to the axes, where the angle speed is singular.
struct QuadrantAngle {
  int quadrant;
  double along;   // sin(alpha)
  double across;  // cos(alpha)
  double rate;    // d alpha / d psi
};

QuadrantAngle quadrant_angle(double psi) {
  const double quarter = 0.5 * std::numbers::pi;
  const double scaled = psi / quarter;
  int k = static_cast<int>(std::floor(scaled));
  double u = scaled - k;
  k = ((k % 4) + 4) % 4;
  const auto smooth = [](double v) { return v * v * (3.0 - 2.0 * v); };
  return {k, std::sin(quarter * smooth(u)), std::sin(quarter * smooth(1.0 - u)), 6.0 * u * (1.0 - u)};
}

} // namespace

Vec2 ClosedCurve::point_at_angle(double phi) const {
  switch (kind_) {
  case Kind::circle:
    return {params_[0] * std::cos(phi), params_[0] * std::sin(phi)};
  case Kind::ellipse:
    return {params_[0] * std::cos(phi), params_[1] * std::sin(phi)};
  case Kind::superellipse: {
    const QuadrantAngle q = quadrant_angle(phi);
    const double e = 2.0 / params_[2];
    const double c = std::pow(q.across, e);
    const double s = std::pow(q.along, e);
    switch (q.quadrant) {
    case 0:
      return {params_[0] * c, params_[1] * s};
    case 1:
      return {-params_[0] * s, params_[1] * c};
    case 2:
      return {-params_[0] * c, -params_[1] * s};
    default:
      return {params_[0] * s, -params_[1] * c};
    }
  }
  case Kind::polyline:
    break;
  }
  return {};
}

double ClosedCurve::speed_at_angle(double phi) const {
  switch (kind_) {
  case Kind::circle:
    return params_[0];
  case Kind::ellipse:
    return std::hypot(params_[0] * std::sin(phi), params_[1] * std::cos(phi));
  case Kind::superellipse: {
    const QuadrantAngle q = quadrant_angle(phi);
    const double e = 2.0 / params_[2];
    // |cos| and |sin| of the polar angle swap roles in odd quadrants.
    const double c = q.quadrant % 2 == 0 ? q.across : q.along;
    const double s = q.quadrant % 2 == 0 ? q.along : q.across;
    // c^(e-1) s times the chart rate stays bounded as c -> 0.
    const double dx = params_[0] * e * std::pow(c, e - 1.0) * s * q.rate;
    const double dy = params_[1] * e * std::pow(s, e - 1.0) * c * q.rate;
    return std::hypot(dx, dy);
  }
  case Kind::polyline:
    break;
  }
  return 0.0;
}

double ClosedCurve::integrate_speed(double a, double b) const {
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    const double dx = half * kGaussNodes[i];
    sum += kGaussWeights[i] * (speed_at_angle(center - dx) + speed_at_angle(center + dx));
  }
  return sum * half;
}

void ClosedCurve::refine_interval(double a, double b, double whole, double abs_tol, int depth,
                                  std::vector<double>& knots,
                                  std::vector<double>& lengths) const {
  const double mid = 0.5 * (a + b);
  const double left = integrate_speed(a, mid);
  const double right = integrate_speed(mid, b);
  const bool converged = std::abs(left + right - whole) <= abs_tol;
  if (converged || depth >= kMaxRefineDepth || !(mid > a && mid < b)) {
    const double piece = left + right;
    if (piece > 0.0) {
      knots.push_back(b);
      lengths.push_back(lengths.back() + piece);
    }
    return;
  }
  refine_interval(a, mid, left, abs_tol, depth + 1, knots, lengths);
  refine_interval(mid, b, right, abs_tol, depth + 1, knots, lengths);
}

void ClosedCurve::build_arc_table() {
  const double scale = *std::max_element(params_.begin(), params_.begin() + (kind_ == Kind::circle ? 1 : 2));
  const double abs_tol = 1e-15 * scale;

  double previous_total = -1.0;
  for (std::size_t samples = kMinArcSamples;; samples *= 2) {
    std::vector<double> knots{0.0};
    std::vector<double> lengths{0.0};
    knots.reserve(samples + 64);
    lengths.reserve(samples + 64);
    for (std::size_t k = 0; k < samples; ++k) {
      const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(samples);
      const double b = kTwoPi * static_cast<double>(k + 1) / static_cast<double>(samples);
      refine_interval(a, b, integrate_speed(a, b), abs_tol, 0, knots, lengths);
    }
    const double total = lengths.back();
    arc_param_ = std::move(knots);
    arc_length_ = std::move(lengths);
    total_length_ = total;
    if (previous_total > 0.0 &&
        std::abs(total - previous_total) < kTotalLengthRelTol * total) {
      break;
    }
    if (samples >= kMaxArcSamples) break;
    previous_total = total;
  }
  if (!(total_length_ > 0.0) || !std::isfinite(total_length_)) {
    throw InputError("curve has no positive finite length");
  }
}

Vec2 ClosedCurve::eval(CurveParam t) const {
  const double s = t.value() * total_length_;
  return kind_ == Kind::polyline ? eval_polyline(s) : eval_preset(s);
}

Vec2 ClosedCurve::eval_preset(double s) const {
  const std::size_t last = arc_length_.size() - 2;
  const auto it = std::upper_bound(arc_length_.begin(), arc_length_.end(), s);
  std::size_t k = it == arc_length_.begin() ? 0 : static_cast<std::size_t>(it - arc_length_.begin()) - 1;
  k = std::min(k, last);

  const double target = s - arc_length_[k];
  const double base = arc_param_[k];
  double lo = base;
  double hi = arc_param_[k + 1];
  if (target <= 0.0) return point_at_angle(base);

  const double span = arc_length_[k + 1] - arc_length_[k];
  double phi = lo + (hi - lo) * std::clamp(target / span, 0.0, 1.0);
  const double g_tol = 1e-17 * total_length_;
  for (int iter = 0; iter < 100; ++iter) {
    const double g = integrate_speed(base, phi) - target;
    if (std::abs(g) <= g_tol) break;
    if (g < 0.0) {
      lo = phi;
    } else {
      hi = phi;
    }
    const double speed = speed_at_angle(phi);
    double next = std::isfinite(speed) && speed > 0.0 ? phi - g / speed : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == phi || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi)) {
      phi = next;
      break;
    }
    phi = next;
  }
  return point_at_angle(phi);
}

Vec2 ClosedCurve::eval_polyline(double s) const {
  const std::size_t n = vertices_.size();
  const auto it = std::upper_bound(arc_length_.begin(), arc_length_.end(), s);
  std::size_t k = it == arc_length_.begin() ? 0 : static_cast<std::size_t>(it - arc_length_.begin()) - 1;
  k = std::min(k, n - 1);
  const Vec2 a = vertices_[k];
  const Vec2 b = vertices_[(k + 1) % n];
  const double frac = (s - arc_length_[k]) / (arc_length_[k + 1] - arc_length_[k]);
  return a + frac * (b - a);
}

ClosedCurve make_preset(std::string_view name, std::span<const double> params) {
  ClosedCurve curve;
  std::size_t expected = 0;
  if (name == "circle") {
    curve.kind_ = ClosedCurve::Kind::circle;
    expected = 1;
  } else if (name == "ellipse") {
    curve.kind_ = ClosedCurve::Kind::ellipse;
    expected = 2;
  } else if (name == "superellipse") {
    curve.kind_ = ClosedCurve::Kind::superellipse;
    expected = 3;
  } else {
    throw InputError("unknown curve preset '" + std::string(name) + "'");
  }
  if (params.size() != expected) {
    throw InputError(std::string(name) + " takes " + std::to_string(expected) + " parameter(s), got " +
                     std::to_string(params.size()));
  }
  for (double p : params) {
    if (!std::isfinite(p) || p <= 0.0) {
      throw InputError(std::string(name) + " parameters must be positive and finite");
    }
  }
  curve.name_ = std::string(name);
  curve.params_.assign(params.begin(), params.end());
  curve.build_arc_table();
  return curve;
}

ClosedCurve load_polyline(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) throw InputError("degenerate polygon: need at least 3 vertices");
  for (const Vec2& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InputError("non-finite polygon coordinate");
  }
  ClosedCurve curve;
  curve.kind_ = ClosedCurve::Kind::polyline;
  curve.name_ = "polyline";
  curve.arc_length_.reserve(vertices.size() + 1);
  curve.arc_length_.push_back(0.0);
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double len = distance(vertices[i], vertices[(i + 1) % n]);
    if (!(len > 0.0)) {
      throw InputError("zero-length segment between vertices " + std::to_string(i) + " and " +
                       std::to_string((i + 1) % n));
    }
    curve.arc_length_.push_back(curve.arc_length_.back() + len);
  }
  curve.total_length_ = curve.arc_length_.back();
  if (!std::isfinite(curve.total_length_)) throw InputError("polygon perimeter is not finite");
  curve.vertices_ = std::move(vertices);
  return curve;
}

ClosedCurve read_polyline_csv(std::istream& in) {
  std::vector<Vec2> vertices;
  std::string line;
  std::size_t line_no = 0;
  bool seen_record = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (!seen_record && comma != std::string_view::npos && trim(text.substr(0, comma)) == "x" &&
        trim(text.substr(comma + 1)) == "y") {
      seen_record = true;
      continue;
    }
    seen_record = true;
    Vec2 v;
    if (comma == std::string_view::npos || !parse_double(text.substr(0, comma), v.x) ||
        !parse_double(text.substr(comma + 1), v.y)) {
      throw InputError("line " + std::to_string(line_no) + ": expected \"x,y\"");
    }
    vertices.push_back(v);
  }
  return load_polyline(std::move(vertices));
}

ClosedCurve parse_curve_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("curve spec must look like name:params, got '" + std::string(spec) + "'");
  }
  const std::string_view name = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  if (name == "file") {
    std::ifstream in{std::string(rest)};
    if (!in) throw InputError("cannot open curve file '" + std::string(rest) + "'");
    return read_polyline_csv(in);
  }
  std::vector<double> params;
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const auto token = rest.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    double value = 0.0;
    if (!parse_double(token, value)) {
      throw InputError("bad number '" + std::string(token) + "' in curve spec");
    }
    params.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return make_preset(name, params);
}

} // namespace loopspace
