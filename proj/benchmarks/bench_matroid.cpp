#include <benchmark/benchmark.h>

#include "rainbow/generate.hpp"

using namespace rainbow;

namespace {

Instance bench_instance(int n) {
  return generate_instance(InstanceKind::linear_random, n, 7);
}

void BM_IsIndependent(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)));
  std::vector<ElementId> set(inst.basis(0).begin(), inst.basis(0).end());
  for (auto _ : state) {
    benchmark::DoNotOptimize(inst.matroid().is_independent(set));
  }
}
BENCHMARK(BM_IsIndependent)->Arg(10)->Arg(20)->Arg(40);

void BM_ProbeGrow(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    IndependenceProbe probe = inst.matroid().probe();
    for (int x = 0; x < inst.matroid().ground_size(); ++x) probe.try_add(x);
    benchmark::DoNotOptimize(probe.size());
  }
}
BENCHMARK(BM_ProbeGrow)->Arg(10)->Arg(20)->Arg(40);

void BM_RankOf(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)));
  std::vector<ElementId> all(inst.matroid().ground_size());
  for (int x = 0; x < inst.matroid().ground_size(); ++x) all[x] = x;
  for (auto _ : state) benchmark::DoNotOptimize(inst.matroid().rank_of(all));
}
BENCHMARK(BM_RankOf)->Arg(10)->Arg(20)->Arg(40);

}  // namespace
