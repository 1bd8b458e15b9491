#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "loopspace/edge_word.hpp"
#include "loopspace/embedder.hpp"
#include "loopspace/inscribed.hpp"
#include "loopspace/pair_space.hpp"

using namespace loopspace;

static void BM_Canonicalize(benchmark::State& state) {
  const auto scheme = static_cast<Scheme>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SquarePoint> points(4096);
  for (auto& p : points) p = {unit(rng), unit(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonicalize(scheme, points[i++ & 4095]));
  }
}
BENCHMARK(BM_Canonicalize)->Arg(0)->Arg(1)->Arg(2);

static void BM_BuildMesh(benchmark::State& state) {
  for (auto _ : state) {
    const Mesh mesh = build_mesh(Scheme::mobius, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(mesh_invariants(mesh));
  }
}
BENCHMARK(BM_BuildMesh)->Arg(16)->Arg(64)->Arg(256);

static void BM_Classify(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(parse_edge_word("abABcdCDefEFghGH")));
  }
}
BENCHMARK(BM_Classify);

static void BM_FindRectangle(benchmark::State& state) {
  const double ab[] = {2.0, 1.0};
  const ClosedCurve ellipse = make_preset("ellipse", ab);
  RectangleOptions opts;
  opts.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_rectangle(ellipse, opts));
  }
}
BENCHMARK(BM_FindRectangle)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
