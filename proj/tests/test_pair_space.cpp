#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>
#include <variant>
#include <vector>

#include "loopspace/errors.hpp"
#include "loopspace/pair_space.hpp"

using namespace loopspace;

namespace {

constexpr Scheme kSchemes[] = {Scheme::torus, Scheme::pinched_sphere, Scheme::mobius};

double lattice_param(std::mt19937_64& rng) { return static_cast<double>(rng() >> 12) * 0x1p-52; }

SquarePoint random_square(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  return {uni(rng), uni(rng)};
}

// Brute-force quotient metric for torus and mobius: enumerate translates
// (and swaps) of both points over a generous window.
double brute_distance(Scheme scheme, SquarePoint p, SquarePoint q) {
  std::vector<SquarePoint> qs{q};
  if (scheme == Scheme::mobius) qs.push_back({q.y, q.x});
  double best = INFINITY;
  for (const SquarePoint& base : qs) {
    for (int j = -2; j <= 2; ++j) {
      for (int k = -2; k <= 2; ++k) best = std::min(best, std::hypot(p.x - base.x - j, p.y - base.y - k));
    }
  }
  return best;
}

} // namespace

TEST_CASE("canonicalize examples") {
  const QuotientPoint t = canonicalize(Scheme::torus, 1.2, -0.3);
  CHECK(t.u == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(t.v == doctest::Approx(0.7).epsilon(1e-12));

  const QuotientPoint p1 = canonicalize(Scheme::pinched_sphere, 0.0, 0.3);
  const QuotientPoint p2 = canonicalize(Scheme::pinched_sphere, 1.0, 0.9);
  CHECK(p1.is_pole);
  CHECK(p1 == p2);
  CHECK(p1.u == 0.0);
  CHECK(p1.v == 0.0);

  const QuotientPoint m = canonicalize(Scheme::mobius, 0.1, 0.2);
  CHECK(std::abs(m.u - 0.15) <= 1e-12);
  CHECK(std::abs(m.v - 0.05) <= 1e-12);

  const QuotientPoint a = canonicalize(Scheme::mobius, 0.0, 0.5);
  CHECK(a.u == 0.25);
  CHECK(a.v == 0.25);
  CHECK(canonicalize(Scheme::mobius, 0.5, 1.0) == a);
  CHECK(canonicalize(Scheme::mobius, 0.75, 0.25).u == 0.0);
}

TEST_CASE("canonicalize preconditions") {
  CHECK_THROWS_AS(canonicalize(Scheme::torus, NAN, 0.0), InputError);
  CHECK_THROWS_AS(canonicalize(Scheme::mobius, 0.0, INFINITY), InputError);
  CHECK_THROWS_AS(canonicalize(Scheme::pinched_sphere, 1.5, 0.0), InputError);
  CHECK_THROWS_AS(canonicalize(Scheme::pinched_sphere, -0.01, 0.0), InputError);
  CHECK(canonicalize(Scheme::pinched_sphere, 1.0 + 1e-13, 0.4).is_pole);
  CHECK(canonicalize(Scheme::pinched_sphere, -1e-13, 0.4).is_pole);
  CHECK(canonicalize(Scheme::pinched_sphere, 0.5, 1.25).v == 0.25);
}

TEST_CASE("equivalence examples") {
  CHECK(equivalent(Scheme::torus, {0.0, 0.3}, {1.0, 0.3}, 1e-9));
  CHECK(equivalent(Scheme::mobius, {0.2, 0.6}, {0.6, 0.2}, 1e-9));
  CHECK_FALSE(equivalent(Scheme::torus, {0.1, 0.1}, {0.1, 0.4}, 1e-3));
  CHECK(equivalent(Scheme::pinched_sphere, {0.0, 0.2}, {1.0, 0.7}));
  CHECK_THROWS_AS(equivalent(Scheme::torus, {0, 0}, {0, 0}, 0.0), InputError);
}

TEST_CASE("quotient distance examples") {
  CHECK(quotient_distance(Scheme::torus, {0.95, 0.5}, {0.05, 0.5}) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(quotient_distance(Scheme::mobius, {0.3, 0.7}, {0.7, 0.3}) == 0.0);
  CHECK(quotient_distance(Scheme::pinched_sphere, {0.0, 0.1}, {1.0, 0.8}) == 0.0);
  // Pinched: a route through the pole can beat the direct one.
  CHECK(quotient_distance(Scheme::pinched_sphere, {0.05, 0.0}, {0.95, 0.5}) == doctest::Approx(0.1));
  CHECK_THROWS_AS(quotient_distance(Scheme::pinched_sphere, {1.2, 0.0}, {0.5, 0.5}), InputError);
}

TEST_CASE("pinched pole class by brute force over edge representatives") {
  // The pole class is both vertical edges; sample it densely and take the
  // smallest distance between representative sets.
  const auto pole_distance = [](SquarePoint p) {
    double best = INFINITY;
    for (int k = 0; k <= 4000; ++k) {
      const double y = k / 4000.0;
      for (double x : {0.0, 1.0}) {
        for (int s = -1; s <= 1; ++s) best = std::min(best, std::hypot(p.x - x, p.y - (y + s)));
      }
    }
    return best;
  };
  CHECK(pole_distance({0.0, 0.1}) == 0.0);
  CHECK(pole_distance({1.0, 0.8}) == 0.0);
  CHECK(quotient_distance(Scheme::pinched_sphere, {0.0, 0.1}, {1.0, 0.8}) == 0.0);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const SquarePoint p = random_square(rng);
    CHECK(quotient_distance(Scheme::pinched_sphere, p, {0.0, 0.37}) == doctest::Approx(pole_distance(p)).epsilon(1e-6));
  }
}

TEST_CASE("quotient distance agrees with brute-force enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> wide(-3.0, 3.0);
  for (Scheme s : {Scheme::torus, Scheme::mobius}) {
    for (int i = 0; i < 5000; ++i) {
      const SquarePoint p{wide(rng), wide(rng)};
      const SquarePoint q{wide(rng), wide(rng)};
      // Reduce first so the enumeration window covers every candidate.
      const SquarePoint pr{wrap_unit(p.x), wrap_unit(p.y)};
      const SquarePoint qr{wrap_unit(q.x), wrap_unit(q.y)};
      REQUIRE(std::abs(quotient_distance(s, p, q) - brute_distance(s, pr, qr)) <= 1e-12);
    }
  }
}

TEST_CASE("metric axioms") {
  std::mt19937_64 rng(23);
  for (Scheme s : kSchemes) {
    for (int i = 0; i < 20000; ++i) {
      const SquarePoint a = random_square(rng);
      const SquarePoint b = random_square(rng);
      const SquarePoint c = random_square(rng);
      const double ab = quotient_distance(s, a, b);
      REQUIRE(ab == quotient_distance(s, b, a));
      REQUIRE(ab <= quotient_distance(s, a, c) + quotient_distance(s, c, b) + 1e-12);
      REQUIRE(quotient_distance(s, a, a) == 0.0);
    }
  }
}

TEST_CASE("encode examples") {
  const QuotientPoint t = encode_pair(Scheme::torus, {CurveParam(0.25), CurveParam(0.75), true});
  CHECK(t == QuotientPoint{Scheme::torus, 0.25, 0.75, false});

  // Brute force: the short arc between 0.9 and 0.1 is the smallest of
  // |0.1 - 0.9 + k| over integer k, and its midpoint is where it is halved.
  double best = INFINITY;
  int best_k = 0;
  for (int k = -2; k <= 2; ++k) {
    if (std::abs(0.1 - 0.9 + k) < best) {
      best = std::abs(0.1 - 0.9 + k);
      best_k = k;
    }
  }
  const double mid = wrap_unit(0.9 + 0.5 * (0.1 - 0.9 + best_k));
  const QuotientPoint m = encode_pair(Scheme::mobius, {CurveParam(0.9), CurveParam(0.1), false});
  CHECK(std::abs(m.v - best / 2.0) <= 1e-12);
  CHECK(std::min(std::abs(m.u - mid), 1.0 - std::abs(m.u - mid)) <= 1e-12);
  CHECK(std::abs(m.u) <= 1e-12);
  CHECK(std::abs(m.v - 0.1) <= 1e-12);

  const QuotientPoint diag = encode_pair(Scheme::mobius, {CurveParam(0.4), CurveParam(0.4), false});
  CHECK(diag.u == 0.4);
  CHECK(diag.v == 0.0);

  CHECK_THROWS_AS(encode_pair(Scheme::torus, {CurveParam(0.1), CurveParam(0.2), false}), InputError);
  CHECK_THROWS_AS(encode_pair(Scheme::mobius, {CurveParam(0.1), CurveParam(0.2), true}), InputError);
  CHECK_THROWS_AS(encode_pair(Scheme::pinched_sphere, {CurveParam(0.1), CurveParam(0.2), false}), InputError);
}

TEST_CASE("decode examples") {
  const DecodedPair m = decode({Scheme::mobius, 0.15, 0.05, false});
  CHECK_FALSE(m.pair.ordered);
  CHECK(m.pair.a.value() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(m.pair.b.value() == doctest::Approx(0.2).epsilon(1e-12));

  const DecodedPair t = decode({Scheme::torus, 0.2, 0.7, false});
  CHECK(t.pair.ordered);
  CHECK(t.pair.a.value() == 0.2);
  CHECK(t.pair.b.value() == 0.7);

  const DecodedPair anti = decode({Scheme::mobius, 0.25, 0.25, false});
  CHECK(anti.pair.a.value() == 0.0);
  CHECK(anti.pair.b.value() == 0.5);

  const DecodedPair pole = decode(make_quotient_point(Scheme::pinched_sphere, 0.0, 0.0));
  CHECK(pole.pole);
  CHECK(pole.pair.a.value() == 0.0);
  CHECK(pole.pair.b.value() == 0.0);

  CHECK_THROWS_AS(decode({Scheme::mobius, 0.75, 0.25, false}), InputError);
  CHECK_THROWS_AS(decode({Scheme::mobius, 0.1, 0.3, false}), InputError);
  CHECK_THROWS_AS(decode({Scheme::torus, 1.0, 0.3, false}), InputError);
  CHECK_THROWS_AS(make_quotient_point(Scheme::pinched_sphere, 0.0, 0.5), InputError);
  CHECK_THROWS_AS(make_quotient_point(Scheme::pinched_sphere, 1.0, 0.5), InputError);
}

TEST_CASE("orbit examples") {
  const Orbit corner = orbit(Scheme::torus, 0.0, 0.0);
  REQUIRE(std::holds_alternative<FiniteOrbit>(corner));
  const auto& pts = std::get<FiniteOrbit>(corner).points;
  CHECK(pts.size() == 4);
  for (SquarePoint p : {SquarePoint{0, 0}, SquarePoint{0, 1}, SquarePoint{1, 0}, SquarePoint{1, 1}}) {
    CHECK(std::find(pts.begin(), pts.end(), p) != pts.end());
  }

  const Orbit swap = orbit(Scheme::mobius, 0.3, 0.8);
  REQUIRE(std::holds_alternative<FiniteOrbit>(swap));
  CHECK(std::get<FiniteOrbit>(swap).points == std::vector<SquarePoint>{{0.3, 0.8}, {0.8, 0.3}});

  const Orbit edge = orbit(Scheme::pinched_sphere, 1.0, 0.4);
  REQUIRE(std::holds_alternative<CollapsedEdge>(edge));
  CHECK(std::get<CollapsedEdge>(edge).left);
  CHECK(std::get<CollapsedEdge>(edge).right);

  CHECK(std::get<FiniteOrbit>(orbit(Scheme::torus, 0.5, 0.5)).points.size() == 1);
  CHECK(std::get<FiniteOrbit>(orbit(Scheme::mobius, 0.4, 0.4)).points.size() == 1);
  CHECK(std::get<FiniteOrbit>(orbit(Scheme::mobius, 0.0, 0.3)).points.size() == 4);
  CHECK(std::get<FiniteOrbit>(orbit(Scheme::pinched_sphere, 0.5, 1.0)).points.size() == 2);
  CHECK_THROWS_AS(orbit(Scheme::torus, 1.1, 0.5), InputError);
}

TEST_CASE("canonicalize is idempotent") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> wide(-5.0, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Scheme s : kSchemes) {
    for (int i = 0; i < 10000; ++i) {
      const double x = s == Scheme::pinched_sphere ? unit(rng) : wide(rng);
      const QuotientPoint q = canonicalize(s, x, wide(rng));
      validate_canonical(q);
      const SquarePoint r = representative(q);
      if (s != Scheme::mobius) REQUIRE(canonicalize(s, q.u, q.v) == q);
      REQUIRE(quotient_distance(q, canonicalize(s, r)) <= 1e-12);
    }
  }
}

TEST_CASE("mobius canonicalization is exactly swap invariant") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> wide(-4.0, 4.0);
  for (int i = 0; i < 100000; ++i) {
    const double x = wide(rng);
    const double y = wide(rng);
    REQUIRE(canonicalize(Scheme::mobius, x, y) == canonicalize(Scheme::mobius, y, x));
  }
}

TEST_CASE("torus canonicalization is exactly translate invariant") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 20000; ++i) {
    const double x = lattice_param(rng);
    const double y = lattice_param(rng);
    const QuotientPoint q = canonicalize(Scheme::torus, x, y);
    for (int j = -1; j <= 1; ++j) {
      for (int k = -1; k <= 1; ++k) REQUIRE(canonicalize(Scheme::torus, x + j, y + k) == q);
    }
  }
}

TEST_CASE("orbit members share one canonical point") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double edges[] = {0.0, 1.0};
  for (Scheme s : kSchemes) {
    for (int i = 0; i < 3000; ++i) {
      double x = unit(rng);
      double y = unit(rng);
      if (i % 3 == 1) x = edges[i % 2];
      if (i % 5 == 2) y = edges[(i / 5) % 2];
      const QuotientPoint q = canonicalize(s, x, y);
      const Orbit o = orbit(s, x, y);
      if (const auto* finite = std::get_if<FiniteOrbit>(&o)) {
        std::set<std::pair<double, double>> unique;
        for (SquarePoint p : finite->points) {
          REQUIRE(canonicalize(s, p) == q);
          REQUIRE(unique.insert({p.x, p.y}).second);
        }
      } else {
        REQUIRE(s == Scheme::pinched_sphere);
        REQUIRE(q.is_pole);
        REQUIRE(canonicalize(s, 0.0, y) == q);
        REQUIRE(canonicalize(s, 1.0, unit(rng)) == q);
      }
    }
  }
}

TEST_CASE("mobius classes match the brute-force swap orbit on grids") {
  // Two grid pairs are the same unordered pair iff their sorted index pairs
  // agree mod n; the chart must separate exactly those classes.
  for (int n : {4, 8, 12, 16, 32}) {
    std::set<std::pair<double, double>> charts;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const QuotientPoint q = canonicalize(Scheme::mobius, static_cast<double>(i) / n, static_cast<double>(j) / n);
        charts.insert({q.u, q.v});
        const QuotientPoint shifted =
            canonicalize(Scheme::mobius, static_cast<double>(j) / n, static_cast<double>(i + n) / n);
        REQUIRE(quotient_distance(q, shifted) <= 1e-12);
      }
    }
    CHECK(charts.size() == static_cast<std::size_t>(n * (n + 1) / 2));
  }
}

TEST_CASE("mobius boundary is the diagonal") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = unit(rng);
    const double y = i % 2 == 0 ? x : unit(rng);
    const QuotientPoint q = canonicalize(Scheme::mobius, x, y);
    REQUIRE((q.v == 0.0) == (wrap_unit(x) == wrap_unit(y)));
  }
  CHECK(canonicalize(Scheme::mobius, 0.375, 1.375).v == 0.0);
}

TEST_CASE("encode and decode round trip") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Scheme s : kSchemes) {
    for (int i = 0; i < 10000; ++i) {
      const PairOnLoop pair{CurveParam(unit(rng)), CurveParam(unit(rng)), s != Scheme::mobius};
      const QuotientPoint q = encode_pair(s, pair);
      const DecodedPair d = decode(q);
      REQUIRE(quotient_distance(s, {pair.a.value(), pair.b.value()}, {d.pair.a.value(), d.pair.b.value()}) <= 1e-12);
      REQUIRE(quotient_distance(encode_pair(s, d.pair), q) <= 1e-12);
    }
  }
}

TEST_CASE("scheme names") {
  for (Scheme s : kSchemes) CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK(scheme_name(Scheme::pinched_sphere) == "pinched-sphere");
  CHECK_THROWS_AS(parse_scheme("klein"), InputError);
}
