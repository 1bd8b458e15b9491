#include "loopspace/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "loopspace/errors.hpp"

namespace loopspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
constexpr int kMinMobiusCells = 5;

// Welding key of grid vertex (i, j); all members of one class share a key.
std::size_t weld_key(Scheme scheme, int n, int i, int j) {
  const auto un = static_cast<std::size_t>(n);
  switch (scheme) {
  case Scheme::torus:
    return static_cast<std::size_t>(i % n) * un + static_cast<std::size_t>(j % n);
  case Scheme::pinched_sphere:
    if (i == 0 || i == n) return un * un;  // the pole
    return static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j % n);
  case Scheme::mobius: {
    const int a = i % n;
    const int b = j % n;
    return static_cast<std::size_t>(std::min(a, b)) * un + static_cast<std::size_t>(std::max(a, b));
  }
  }
  return 0;
}

QuotientPoint grid_point(Scheme scheme, int n, int i, int j) {
  const double x = static_cast<double>(i) / n;
  const double y = static_cast<double>(j) / n;
  if (scheme == Scheme::pinched_sphere && (i == 0 || i == n)) {
    return {Scheme::pinched_sphere, 0.0, 0.0, true};
  }
  return canonicalize(scheme, x, y);
}

} // namespace

void EmbedConfig::validate(Scheme scheme) const {
  for (double value : {major_radius, minor_radius, half_width}) {
    if (!std::isfinite(value) || value <= 0.0) throw InputError("embedding radii must be positive and finite");
  }
  if (half_width >= major_radius) throw InputError("Mobius half width must be smaller than the major radius");
  if (scheme == Scheme::torus && !(major_radius > minor_radius)) {
    throw InputError("torus needs major radius > minor radius");
  }
}

Vec3 embed(const QuotientPoint& q, const EmbedConfig& cfg) {
  validate_canonical(q);
  switch (q.scheme) {
  case Scheme::torus: {
    const double a = kTwoPi * q.u;
    const double b = kTwoPi * q.v;
    const double ring = cfg.major_radius + cfg.minor_radius * std::cos(b);
    return {ring * std::cos(a), ring * std::sin(a), cfg.minor_radius * std::sin(b)};
  }
  case Scheme::pinched_sphere: {
    if (q.is_pole) return {0.0, 0.0, 0.0};
    const double theta = kTwoPi * q.u + std::numbers::pi;
    const double around = kTwoPi * q.v;
    const double ring = cfg.minor_radius + cfg.minor_radius * std::cos(theta);
    return {ring * std::cos(around), ring * std::sin(around), cfg.minor_radius * std::sin(theta)};
  }
  case Scheme::mobius: {
    // Midpoints m and m + 1/2 share the same angle t; the sign flip at
    // m = 1/2 is the half twist, since E(t + 2 pi, s) = E(t, -s).
    const double t = kTwoPi * wrap_unit(2.0 * q.u);
    const double sigma = q.u < 0.5 ? 1.0 : -1.0;
    const double s = (1.0 - 4.0 * q.v) * sigma;
    const double offset = s * cfg.half_width;
    const double ring = cfg.major_radius + offset * std::cos(0.5 * t);
    return {ring * std::cos(t), ring * std::sin(t), offset * std::sin(0.5 * t)};
  }
  }
  return {};
}

Mesh build_mesh(Scheme scheme, int resolution, const EmbedConfig& cfg) {
  if (resolution < 3) throw InputError("mesh resolution must be at least 3, got " + std::to_string(resolution));
  cfg.validate(scheme);

  // Below 5 cells the folded Mobius grid has distinct triangles sharing a
  // vertex set, so it is not a simplicial complex. Mesh at double resolution.
  const int n = scheme == Scheme::mobius && resolution < kMinMobiusCells ? 2 * resolution : resolution;

  const int side = n + 1;
  const auto grid_size = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
  const auto un = static_cast<std::size_t>(n);

  Mesh mesh;
  mesh.weld_map.resize(grid_size);
  std::vector<std::size_t> welded_of_key(un * un + 1, kUnassigned);
  std::vector<QuotientPoint> welded_points;

  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const std::size_t key = weld_key(scheme, n, i, j);
      std::size_t& slot = welded_of_key[key];
      if (slot == kUnassigned) {
        slot = welded_points.size();
        welded_points.push_back(grid_point(scheme, n, i, j));
      }
      mesh.weld_map[static_cast<std::size_t>(i) * side + static_cast<std::size_t>(j)] = slot;
    }
  }

  mesh.vertices.reserve(welded_points.size());
  for (const QuotientPoint& q : welded_points) mesh.vertices.push_back(embed(q, cfg));

  const auto welded = [&](int i, int j) {
    return mesh.weld_map[static_cast<std::size_t>(i) * side + static_cast<std::size_t>(j)];
  };
  std::set<Triangle> seen;
  const auto emit = [&](Triangle tri) {
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) return;
    Triangle sorted = tri;
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(sorted).second) return;
    mesh.triangles.push_back(tri);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t c00 = welded(i, j);
      const std::size_t c10 = welded(i + 1, j);
      const std::size_t c11 = welded(i + 1, j + 1);
      const std::size_t c01 = welded(i, j + 1);
      emit({c00, c10, c11});
      emit({c00, c11, c01});
    }
  }
  return mesh;
}

} // namespace loopspace
