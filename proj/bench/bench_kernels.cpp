#include <benchmark/benchmark.h>

#include "newtongraph/dynamics.hpp"
#include "newtongraph/equivalence.hpp"
#include "newtongraph/newton_graph.hpp"
#include "newtongraph/rays.hpp"

using namespace newtongraph;

namespace {

const NewtonMap& quartic() {
  static const NewtonMap f = make_newton_map(Polynomial({-3.0, 0.0, -6.0, 0.0, 1.0}));
  return f;
}

RasterParams raster(int n) {
  RasterParams p;
  p.width = p.height = n;
  p.half_width = 3.0;
  return p;
}

void BM_RenderSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(render_basins_serial(quartic(), raster(static_cast<int>(st.range(0)))));
}
void BM_RenderParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(render_basins(quartic(), raster(static_cast<int>(st.range(0)))));
}

void BM_ChannelSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(channel_diagram_serial(quartic()));
}
void BM_ChannelParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(channel_diagram(quartic()));
}

void BM_Pullback(benchmark::State& st) {
  const GeoGraph d0 = channel_diagram(quartic());
  const GeoGraph d1 = pullback_level(quartic(), d0);
  const bool parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(pullback_level(quartic(), d1, parallel));
}

const NewtonGraphData& exported() {
  static const NewtonGraphData g = compute_newton_graph(quartic()).combinatorial;
  return g;
}

void BM_EquivalenceSerial(benchmark::State& st) {
  const auto b = relabeled(exported(), 7);
  for (auto _ : st) benchmark::DoNotOptimize(graphs_equivalent_serial(exported(), b));
}
void BM_EquivalenceParallel(benchmark::State& st) {
  const auto b = relabeled(exported(), 7);
  for (auto _ : st) benchmark::DoNotOptimize(graphs_equivalent(exported(), b));
}

}  // namespace

BENCHMARK(BM_RenderSerial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RenderParallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pullback)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EquivalenceSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EquivalenceParallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
