#include "loopspace/inscribed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "loopspace/errors.hpp"

namespace loopspace {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kFiniteDifferenceStep = 1e-7;
constexpr double kAspectTolerance = 0.05;
constexpr double kDistinctPairs = kDefaultTolerance;
constexpr int kVerifySamples = 4096;
constexpr double kMaxSeedSeparation = 0.125;

using Params = Eigen::Vector4d;

struct Sample {
  double t1;
  double t2;
  Eigen::Vector3d image;  // midpoint x, midpoint y, half length
};

Eigen::Vector3d image_vector(const ClosedCurve& curve, double t1, double t2) {
  const ChordImage c = chord_image(curve, t1, t2);
  return {c.midpoint.x, c.midpoint.y, c.half_length};
}

// Combined residual used for acceptance: the larger of the midpoint gap and
// the diagonal-length gap.
double combined(const Eigen::Vector3d& r) { return std::max(std::hypot(r[0], r[1]), 2.0 * std::abs(r[2])); }

double pair_separation(double t1, double t2, double t3, double t4) {
  return quotient_distance(Scheme::mobius, {t1, t2}, {t3, t4});
}

class ChordLeastSquares {
public:
  explicit ChordLeastSquares(const ClosedCurve& curve) : curve_(curve) {}

  Eigen::Vector3d residual(const Params& p) const {
    return image_vector(curve_, p[0], p[1]) - image_vector(curve_, p[2], p[3]);
  }

  // Levenberg-Marquardt on 3 equations in 4 unknowns with central
  // differences; runs until the residual stops decreasing.
  Params refine(Params p, double floor) const {
    Eigen::Vector3d r = residual(p);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (int iter = 0; iter < kMaxIterations && combined(r) > floor; ++iter) {
      Eigen::Matrix<double, 3, 4> jac;
      for (int k = 0; k < 4; ++k) {
        Params fwd = p;
        Params bwd = p;
        fwd[k] += kFiniteDifferenceStep;
        bwd[k] -= kFiniteDifferenceStep;
        jac.col(k) = (residual(fwd) - residual(bwd)) / (2.0 * kFiniteDifferenceStep);
      }
      const Eigen::Matrix4d normal = jac.transpose() * jac;
      const Eigen::Vector4d gradient = jac.transpose() * r;
      const double scale = std::max(normal.diagonal().maxCoeff(), 1e-300);

      bool improved = false;
      while (lambda < 1e12) {
        const Eigen::Matrix4d damped = normal + (lambda * scale) * Eigen::Matrix4d::Identity();
        const Params step = damped.ldlt().solve(-gradient);
        const Params trial = p + step;
        const Eigen::Vector3d trial_r = residual(trial);
        const double trial_cost = trial_r.squaredNorm();
        if (std::isfinite(trial_cost) && trial_cost < cost) {
          p = trial;
          r = trial_r;
          cost = trial_cost;
          lambda = std::max(lambda / 3.0, 1e-15);
          improved = true;
          break;
        }
        lambda *= 4.0;
      }
      if (!improved) break;
    }
    return p;
  }

private:
  const ClosedCurve& curve_;
};

std::int64_t cell_coordinate(double value, double cell) {
  return static_cast<std::int64_t>(std::floor(value / cell));
}

std::uint64_t cell_key(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
  const auto mix = [](std::int64_t v) { return static_cast<std::uint64_t>(v) & 0x1FFFFF; };
  return (mix(ix) << 42) | (mix(iy) << 21) | mix(iz);
}

double aspect_of(const RectangleWitness& w) {
  const double a = distance(w.vertices[0], w.vertices[1]);
  const double b = distance(w.vertices[1], w.vertices[2]);
  const double lo = std::min(a, b);
  return lo > 0.0 ? std::max(a, b) / lo : std::numeric_limits<double>::infinity();
}

double distance_to_curve(const ClosedCurve& curve, Vec2 v, const std::vector<Vec2>& dense) {
  const int n = static_cast<int>(dense.size());
  int nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double d = distance(dense[static_cast<std::size_t>(k)], v);
    if (d < best) {
      best = d;
      nearest = k;
    }
  }
  // Golden-section search on the bracketing arc around the nearest sample.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (nearest - 1.0) / n;
  double hi = (nearest + 1.0) / n;
  const auto f = [&](double t) { return distance(curve.eval(t), v); };
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 90; ++iter) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({best, f1, f2});
}

} // namespace

ChordImage chord_image(const ClosedCurve& curve, double t1, double t2) {
  const Vec2 a = curve.eval(t1);
  const Vec2 b = curve.eval(t2);
  return {0.5 * (a + b), 0.5 * std::hypot(a.x - b.x, a.y - b.y)};
}

ChordImage vaughan_map(const ClosedCurve& curve, const PairOnLoop& pair) {
  return chord_image(curve, pair.a.value(), pair.b.value());
}

void RectangleOptions::validate() const {
  if (grid_n < 16) throw InputError("rectangle search grid must be at least 16, got " + std::to_string(grid_n));
  if (!std::isfinite(tol) || tol <= 0.0) throw InputError("rectangle tolerance must be positive");
  if (!std::isfinite(min_separation) || min_separation <= 0.0) {
    throw InputError("minimum separation must be positive");
  }
  if (aspect_ratio && !(std::isfinite(*aspect_ratio) && *aspect_ratio >= 1.0)) {
    throw InputError("aspect ratio preference must be >= 1");
  }
  if (max_refinements < 1) throw InputError("max_refinements must be positive");
}

RectangleWitness make_witness(const ClosedCurve& curve, double t1, double t2, double t3, double t4) {
  RectangleWitness w;
  w.pairs = {{{wrap_unit(t1), wrap_unit(t2)}, {wrap_unit(t3), wrap_unit(t4)}}};
  const Vec2 p1 = curve.eval(w.pairs[0][0]);
  const Vec2 p2 = curve.eval(w.pairs[0][1]);
  const Vec2 p3 = curve.eval(w.pairs[1][0]);
  const Vec2 p4 = curve.eval(w.pairs[1][1]);
  w.vertices = {p1, p3, p2, p4};
  w.midpoint_residual = distance(0.5 * (p1 + p2), 0.5 * (p3 + p4));
  w.length_residual = std::abs(distance(p1, p2) - distance(p3, p4));
  return w;
}

RectangleResult find_rectangle(const ClosedCurve& curve, const RectangleOptions& opts) {
  opts.validate();
  const int n = opts.grid_n;

  // Every sampled parameter m +- d is a multiple of 1 / (4n).
  const int lattice = 4 * n;
  std::vector<Vec2> points(static_cast<std::size_t>(lattice));
  for (int k = 0; k < lattice; ++k) points[static_cast<std::size_t>(k)] = curve.eval(static_cast<double>(k) / lattice);
  // Largest pairwise distance; unlike a bounding box it is invariant under
  // rigid motions of the curve.
  double diameter = 0.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) diameter = std::max(diameter, distance(points[a], points[b]));
  }

  // Grid order: midpoint index outer, half-separation index inner. d = 0 is
  // skipped (degenerate chords), and on the antipodal row only m < 1/2 is
  // canonical.
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int l = 1; l <= n; ++l) {
      if (l == n && 2 * k >= n) continue;
      const int i1 = ((4 * k - l) % lattice + lattice) % lattice;
      const int i2 = (4 * k + l) % lattice;
      const Vec2 a = points[static_cast<std::size_t>(i1)];
      const Vec2 b = points[static_cast<std::size_t>(i2)];
      samples.push_back({static_cast<double>(i1) / lattice, static_cast<double>(i2) / lattice,
                         {0.5 * (a.x + b.x), 0.5 * (a.y + b.y), 0.5 * std::hypot(a.x - b.x, a.y - b.y)}});
    }
  }

  // Two sheets of the image cross between samples, so collisions are
  // gathered at the sampling scale; a tolerance-sized cell would only ever
  // catch exact hits.
  const double radius = diameter * std::max(4.0 * opts.tol, 4.0 / n);
  // Seeds closer than a few grid steps refine onto the same chord. The cap
  // keeps coarse grids from excluding every pair.
  const double seed_separation = std::max(opts.min_separation, std::min(8.0 / n, kMaxSeedSeparation));
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
  cells.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Eigen::Vector3d& im = samples[i].image;
    cells[cell_key(cell_coordinate(im[0], radius), cell_coordinate(im[1], radius), cell_coordinate(im[2], radius))]
        .push_back(static_cast<std::uint32_t>(i));
  }

  const ChordLeastSquares solver(curve);
  const double floor = 1e-15 * std::max(diameter, 1e-300);
  const double min_half_length = 1e-6 * diameter;
  double best_residual = std::numeric_limits<double>::infinity();
  std::optional<RectangleWitness> first_found;
  int refinements = 0;

  for (std::size_t i = 0; i < samples.size() && refinements < opts.max_refinements; ++i) {
    const Sample& si = samples[i];
    const std::int64_t cx = cell_coordinate(si.image[0], radius);
    const std::int64_t cy = cell_coordinate(si.image[1], radius);
    const std::int64_t cz = cell_coordinate(si.image[2], radius);
    std::vector<std::uint32_t> partners;
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = cells.find(cell_key(cx + dx, cy + dy, cz + dz));
          if (it == cells.end()) continue;
          for (std::uint32_t j : it->second) {
            if (j <= i) continue;
            const Sample& sj = samples[j];
            const double gap = (si.image - sj.image).norm();
            if (gap > radius) continue;
            if (pair_separation(si.t1, si.t2, sj.t1, sj.t2) < seed_separation) continue;
            best_residual = std::min(best_residual, gap);
            partners.push_back(j);
          }
        }
      }
    }
    std::sort(partners.begin(), partners.end());

    for (std::uint32_t j : partners) {
      if (refinements++ >= opts.max_refinements) break;
      const Sample& sj = samples[j];
      const Params p = solver.refine(Params(si.t1, si.t2, sj.t1, sj.t2), floor);
      const double residual = combined(solver.residual(p));
      best_residual = std::min(best_residual, residual);
      if (residual > opts.tol) continue;
      if (pair_separation(p[0], p[1], p[2], p[3]) < opts.min_separation) continue;
      const RectangleWitness w = make_witness(curve, p[0], p[1], p[2], p[3]);
      const double h1 = 0.5 * distance(w.vertices[0], w.vertices[2]);
      const double h2 = 0.5 * distance(w.vertices[1], w.vertices[3]);
      if (std::min(h1, h2) < min_half_length) continue;
      if (!opts.aspect_ratio) return w;
      if (std::abs(aspect_of(w) - *opts.aspect_ratio) <= kAspectTolerance * *opts.aspect_ratio) return w;
      if (!first_found) first_found = w;
    }
  }
  if (first_found) return *first_found;
  if (!std::isfinite(best_residual)) best_residual = diameter;
  return NotFound{best_residual};
}

RectangleReport verify_rectangle(const ClosedCurve& curve, const RectangleWitness& w, double tol) {
  RectangleReport report;
  std::vector<Vec2> dense(static_cast<std::size_t>(kVerifySamples));
  for (int k = 0; k < kVerifySamples; ++k) {
    dense[static_cast<std::size_t>(k)] = curve.eval(static_cast<double>(k) / kVerifySamples);
  }
  for (std::size_t k = 0; k < 4; ++k) report.vertex_distance[k] = distance_to_curve(curve, w.vertices[k], dense);

  const Vec2 diag1 = w.vertices[2] - w.vertices[0];
  const Vec2 diag2 = w.vertices[3] - w.vertices[1];
  report.midpoint_residual =
      distance(0.5 * (w.vertices[0] + w.vertices[2]), 0.5 * (w.vertices[1] + w.vertices[3]));
  report.diagonal_residual = std::abs(norm(diag1) - norm(diag2));
  report.side_lengths = {distance(w.vertices[0], w.vertices[1]), distance(w.vertices[1], w.vertices[2])};
  const double denom = norm(diag1) * norm(diag2);
  report.diagonal_angle = denom > 0.0 ? std::acos(std::clamp(std::abs(dot(diag1, diag2)) / denom, 0.0, 1.0)) : 0.0;

  if (pair_separation(w.pairs[0][0], w.pairs[0][1], w.pairs[1][0], w.pairs[1][1]) <= kDistinctPairs) {
    report.failure = "pairs not distinct";
  } else if (*std::max_element(report.vertex_distance.begin(), report.vertex_distance.end()) > tol) {
    report.failure = "vertex off the curve";
  } else if (report.midpoint_residual > tol) {
    report.failure = "diagonals do not bisect each other";
  } else if (report.diagonal_residual > tol) {
    report.failure = "diagonals differ in length";
  }
  report.passed = report.failure.empty();
  return report;
}

} // namespace loopspace
