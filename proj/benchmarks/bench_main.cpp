#include <benchmark/benchmark.h>

#include "sttrace/bessel.hpp"
#include "sttrace/experiments.hpp"
#include "sttrace/kloosterman.hpp"
#include "sttrace/petersson.hpp"

using namespace sttrace;

static void BM_BesselSeries(benchmark::State& state) {
  const long a = state.range(0);
  const Ball x = Ball::from_int(a, 192);
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j(a, x, 192));
}
BENCHMARK(BM_BesselSeries)->Arg(100)->Arg(1000);

static void BM_BesselTransition(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(transition_eval(state.range(0), 0.5, 192));
}
BENCHMARK(BM_BesselTransition)->Arg(216)->Arg(1834);

static void BM_KloostermanExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_exact(1, 1, state.range(0)));
}
BENCHMARK(BM_KloostermanExact)->Arg(15)->Arg(105);

static void BM_Certificate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nonvanishing_certificate(3, static_cast<int>(state.range(0)), 5));
}
BENCHMARK(BM_Certificate)->Arg(3)->Arg(6);

static void BM_Petersson(benchmark::State& state) {
  const long k = state.range(0);
  const std::int64_t n = 729;
  for (auto _ : state) benchmark::DoNotOptimize(delta_truncated(k, 5, 1, n, default_truncation(k, 5, 1, n), 192));
}
BENCHMARK(BM_Petersson)->Arg(68)->Arg(612);

static void BM_FirstExperiment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_experiment(3, 5, 5, ExperimentOptions{}));
}
BENCHMARK(BM_FirstExperiment)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
