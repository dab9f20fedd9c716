#include <benchmark/benchmark.h>

#include "rainbow/cascade.hpp"
#include "rainbow/generate.hpp"

using namespace rainbow;

namespace {

struct EngineState {
  Instance inst;
  Family fam;
  int member;
  int missing;
};

EngineState make_state(int n) {
  Instance inst = generate_instance(InstanceKind::linear_random, n, 11);
  Rng rng(13);
  const int f = std::max(1, 2 * n / 5);
  Family fam = random_family(inst, rng, f, n * f * 3 / 4);
  int member = 0;
  for (int i = 0; i < f; ++i)
    if (!fam.members[i].empty() && fam.members[i].size() < n) member = i;
  const int missing = fam.members[member].missing_colours().front();
  return {std::move(inst), std::move(fam), member, missing};
}

void BM_EnumerateAddable(benchmark::State& state) {
  EngineState s = make_state(static_cast<int>(state.range(0)));
  const UsedSet used = used_set(s.fam, s.inst.n());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        enumerate_addable(s.inst, used, s.fam.members[s.member], s.missing));
}
BENCHMARK(BM_EnumerateAddable)->Arg(10)->Arg(20)->Arg(40);

void BM_WitnessInjection(benchmark::State& state) {
  EngineState s = make_state(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_witness_injection(s.inst, s.fam.members[s.member], 0));
}
BENCHMARK(BM_WitnessInjection)->Arg(10)->Arg(20)->Arg(40);

void BM_InitialQ(benchmark::State& state) {
  EngineState s = make_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(initial_Q(s.inst, s.fam, s.member));
}
BENCHMARK(BM_InitialQ)->Arg(10)->Arg(20)->Arg(40);

}  // namespace
