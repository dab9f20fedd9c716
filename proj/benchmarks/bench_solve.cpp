#include <benchmark/benchmark.h>

#include "rainbow/io.hpp"

using namespace rainbow;

namespace {

void BM_SolveLinear(benchmark::State& state) {
  Instance inst =
      generate_instance(InstanceKind::linear_random, static_cast<int>(state.range(0)), 3);
  SolverConfig cfg;
  cfg.restarts = 2;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, cfg));
}
BENCHMARK(BM_SolveLinear)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SolveUniform(benchmark::State& state) {
  Instance inst =
      generate_instance(InstanceKind::uniform_identical, static_cast<int>(state.range(0)), 3);
  SolverConfig cfg;
  cfg.restarts = 2;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, cfg));
}
BENCHMARK(BM_SolveUniform)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
