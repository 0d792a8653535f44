#include <benchmark/benchmark.h>

#include "abekit/constructions.hpp"
#include "abekit/transforms.hpp"
#include "abekit/tools/corpus.hpp"

using namespace abekit;

static void BM_ExpandLchsymAbp(benchmark::State& state) {
  const Abp a = lchsym_abp(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(expand(a));
}
BENCHMARK(BM_ExpandLchsymAbp)->Arg(2)->Arg(4)->Arg(6);

static void BM_DepthReduceComb(benchmark::State& state) {
  const Formula comb = tools::left_comb(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(depth_reduce(comb));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DepthReduceComb)->RangeMultiplier(2)->Range(16, 512)->Complexity();

static void BM_Homogenize(benchmark::State& state) {
  tools::Rng rng(1);
  const Formula f = tools::random_formula(rng, {40, 4, 6});
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(homogenize_formula(f, d));
}
BENCHMARK(BM_Homogenize)->DenseRange(1, 6);

static void BM_AbecedarianizeCircuit(benchmark::State& state) {
  tools::Rng rng(2);
  const Circuit c = tools::random_circuit(rng, {40, 4, 6});
  const BucketingSystem B = BucketingSystem::singletons(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(abecedarianize_circuit(c, B));
  state.counters["gates_in"] = static_cast<double>(c.store.size());
}
BENCHMARK(BM_AbecedarianizeCircuit)->Arg(4)->Arg(8);

static void BM_AbpToFormula(benchmark::State& state) {
  const Abp a = lchsym_abp(4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(abp_to_formula(a));
}
BENCHMARK(BM_AbpToFormula)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_ChsymInterpolated(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chsym_formula_interpolated(n, 3));
}
BENCHMARK(BM_ChsymInterpolated)->DenseRange(2, 5);

static void BM_Pipeline(benchmark::State& state) {
  PipelineConfig cfg;
  cfg.semantic_checks = false;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(separation_pipeline(n, cfg));
}
BENCHMARK(BM_Pipeline)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
