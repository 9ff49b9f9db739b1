#include <benchmark/benchmark.h>

#include "smr/smr.hpp"

namespace {

using namespace smr;

ParsedInstance make(InstanceKind kind, int n, double density, int p = 0, int q = 0) {
  GenSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.density = density;
  spec.p_count = p;
  spec.q_count = q;
  spec.seed = 12345;
  return gen_random(spec);
}

WeightAssignment unit_weights(const Instance& inst) {
  WeightAssignment w;
  int i = 0;
  for (const Edge& e : inst.edges()) w.set(e, Rational(i++ % 5));
  return w;
}

void BM_GaleShapley(benchmark::State& state) {
  auto p = make(InstanceKind::marriage, static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(gale_shapley(p.instance, Proposer::left));
}
BENCHMARK(BM_GaleShapley)->RangeMultiplier(2)->Range(16, 256);

void BM_MinWeightStable(benchmark::State& state) {
  auto p = make(InstanceKind::marriage, static_cast<int>(state.range(0)), 0.5);
  auto w = unit_weights(p.instance);
  for (auto _ : state) benchmark::DoNotOptimize(min_weight_stable(p.instance, w));
}
BENCHMARK(BM_MinWeightStable)->RangeMultiplier(2)->Range(8, 64);

void BM_SmMinViolations(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = make(InstanceKind::marriage, n, 0.5, n / 2, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(sm_min_restricted_violations(p.instance, p.restrictions));
}
BENCHMARK(BM_SmMinViolations)->RangeMultiplier(2)->Range(8, 64);

void BM_Irving(benchmark::State& state) {
  auto p = make(InstanceKind::roommates, static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(irving(p.instance));
}
BENCHMARK(BM_Irving)->RangeMultiplier(2)->Range(16, 256);

void BM_StabilityLp(benchmark::State& state) {
  auto p = make(InstanceKind::roommates, static_cast<int>(state.range(0)), 0.5);
  auto w = unit_weights(p.instance);
  for (auto _ : state) benchmark::DoNotOptimize(solve_stability_lp(p.instance, w));
}
BENCHMARK(BM_StabilityLp)->DenseRange(6, 14, 4);

void BM_SrApprox2(benchmark::State& state) {
  auto p = make(InstanceKind::roommates, static_cast<int>(state.range(0)), 0.5, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sr_min_restricted_violations(p.instance, p.restrictions, ViolationMode::approx2));
  }
}
BENCHMARK(BM_SrApprox2)->DenseRange(6, 14, 4);

void BM_MinBpExact(benchmark::State& state) {
  auto p = make(InstanceKind::marriage, static_cast<int>(state.range(0)), 0.6, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(minbp_exact(p.instance, p.restrictions));
}
BENCHMARK(BM_MinBpExact)->DenseRange(3, 6, 1);

void BM_MinBpDegree2(benchmark::State& state) {
  GenSpec spec;
  spec.kind = InstanceKind::roommates;
  spec.n = static_cast<int>(state.range(0));
  spec.density = 0.5;
  spec.degree_cap = 2;
  spec.p_count = 2;
  spec.q_count = 1;
  spec.seed = 7;
  auto p = gen_random(spec);
  for (auto _ : state) benchmark::DoNotOptimize(minbp_degree2(p.instance, p.restrictions));
}
BENCHMARK(BM_MinBpDegree2)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
