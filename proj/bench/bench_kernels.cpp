// Parallel kernels against their serial references on CD-style inputs.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "lgc/approx.hpp"
#include "lgc/carpet.hpp"
#include "lgc/gaps.hpp"

namespace {

const lgc::CarpetSpec& cd() {
  static const auto spec = lgc::parse_spec(R"({"rows":[
    {"b":"1/3","cells":[{"a":"1/4","c":"0"},{"a":"1/4","c":"3/4"}]},
    {"b":"1/3","cells":[]},
    {"b":"1/3","cells":[{"a":"1/4","c":"0"},{"a":"1/4","c":"3/4"}]}]})");
  return spec;
}

double scale(const benchmark::State& state) { return std::pow(3.0, -static_cast<double>(state.range(0))); }

std::vector<lgc::Rect> random_rects(std::size_t n) {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> pos(0.0, 1.0), size(0.0, 0.01);
  std::vector<lgc::Rect> out(n);
  for (auto& r : out) r = {pos(rng), pos(rng), size(rng), size(rng)};
  return out;
}

void BM_StoppingRects(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lgc::stopping_rects(cd(), scale(state)));
}

void BM_StoppingRectsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lgc::serial::stopping_rects(cd(), scale(state)));
}

void BM_GridCount(benchmark::State& state) {
  const double delta = scale(state);
  const auto rects = lgc::stopping_rects(cd(), delta);
  for (auto _ : state) benchmark::DoNotOptimize(lgc::grid_count(rects, delta));
}

void BM_GridCountSerial(benchmark::State& state) {
  const double delta = scale(state);
  const auto rects = lgc::stopping_rects(cd(), delta);
  for (auto _ : state) benchmark::DoNotOptimize(lgc::serial::grid_count(rects, delta));
}

void BM_Components(benchmark::State& state) {
  const auto rects = random_rects(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lgc::n_delta_components(rects, 0.005));
}

void BM_ComponentsSerial(benchmark::State& state) {
  const auto rects = random_rects(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lgc::serial::n_delta_components(rects, 0.005));
}

void BM_GapSequence(benchmark::State& state) {
  const auto rects = lgc::stopping_rects(cd(), scale(state));
  for (auto _ : state) benchmark::DoNotOptimize(lgc::gap_sequence_mst(rects));
}

void BM_GapSequenceSerial(benchmark::State& state) {
  const auto rects = lgc::stopping_rects(cd(), scale(state));
  for (auto _ : state) benchmark::DoNotOptimize(lgc::serial::gap_sequence_mst(rects));
}

}  // namespace

BENCHMARK(BM_StoppingRects)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StoppingRectsSerial)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridCount)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridCountSerial)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Components)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComponentsSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
// Dense Prim is quadratic; keep its inputs to 4^5 and 4^6 rects.
BENCHMARK(BM_GapSequence)->DenseRange(5, 8, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapSequenceSerial)->DenseRange(5, 6, 1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
