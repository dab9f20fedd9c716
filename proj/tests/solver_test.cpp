#include <doctest.h>

#include "rainbow/errors.hpp"
#include "rainbow/io.hpp"
#include "rainbow/oracle.hpp"
#include "test_util.hpp"

using namespace rainbow;
using testutil::f1;
using testutil::f2;

TEST_CASE("solve on the fixtures") {
  SolverConfig cfg;
  cfg.f = 3;
  Decomposition dec = solve(f1(), cfg);
  CHECK(dec.k == 3);
  CHECK(verify(f1(), dec).ok());

  SolverConfig cfg2;
  cfg2.f = 1;
  Decomposition dec2 = solve(f2(), cfg2);
  CHECK(dec2.k == 1);
  CHECK(verify(f2(), dec2).ok());

  SolverConfig cfg0;
  cfg0.f = 0;
  Decomposition dec0 = solve(f2(), cfg0);
  CHECK(dec0.k == 0);
  CHECK(dec0.volume == 0);
}

TEST_CASE("config validation") {
  SolverConfig bad;
  bad.epsilon = 1.5;
  CHECK_THROWS_AS((void)solve(f1(), bad), input_error);
  SolverConfig too_big;
  too_big.f = 5;
  CHECK_THROWS_AS((void)solve(f1(), too_big), input_error);
}

TEST_CASE("exhaustive fallback matches the exact oracle") {
  Rng rng(501);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = testutil::random_instance(rng, 2, 4);
    SolverConfig cfg;
    cfg.f = inst.n();
    Decomposition dec = solve(inst, cfg);
    CHECK(dec.k == oracle::exact_max_decomposition(inst).k);
    CHECK(verify(inst, dec).ok());
  }
}

TEST_CASE("solver output is deterministic byte for byte") {
  Instance inst = generate_instance(InstanceKind::linear_random, 8, 99);
  SolverConfig cfg;
  cfg.seed = 7;
  const std::string a = serialize_decomposition(inst, cfg, solve(inst, cfg));
  const std::string b = serialize_decomposition(inst, cfg, solve(inst, cfg));
  CHECK(a == b);
}

TEST_CASE("volume never decreases along the trace") {
  Instance inst = generate_instance(InstanceKind::linear_random, 9, 3);
  SolverConfig cfg;
  cfg.collect_trace = true;
  Decomposition dec = solve(inst, cfg);
  int last = 0;
  for (const TraceRecord& r : dec.trace) {
    CHECK(r.volume >= last);
    last = r.volume;
  }
  CHECK(verify(inst, dec).ok());
}

TEST_CASE("machinery modes never fall below greedy") {
  Rng rng(503);
  for (int trial = 0; trial < 6; ++trial) {
    Instance inst = testutil::random_instance(rng, 7, 10);
    SolverConfig greedy;
    greedy.mode = SolveMode::greedy;
    greedy.seed = trial;
    greedy.restarts = 2;
    SolverConfig hybrid = greedy;
    hybrid.mode = SolveMode::hybrid;
    SolverConfig faithful = greedy;
    faithful.mode = SolveMode::proof_faithful;
    const int kg = solve(inst, greedy).k;
    CHECK(solve(inst, hybrid).k >= kg);
    CHECK(solve(inst, faithful).k >= kg);
  }
}

TEST_CASE("solver honours the family invariants end-to-end") {
  Rng rng(509);
  for (int trial = 0; trial < 8; ++trial) {
    Instance inst = testutil::random_instance(rng, 5, 9);
    SolverConfig cfg;
    cfg.seed = trial;
    cfg.restarts = 2;
    Decomposition dec = solve(inst, cfg);
    CHECK(verify(inst, dec).ok());
    const int f = cfg.f.value_or(static_cast<int>((1.0 - cfg.epsilon) * inst.n() / 2));
    CHECK(static_cast<int>(dec.complete.size() + dec.partial.size()) == f);
  }
}

TEST_CASE("verify flags injected corruption") {
  SolverConfig cfg;
  cfg.f = 3;
  Instance inst = f1();
  Decomposition dec = solve(inst, cfg);
  REQUIRE(dec.k == 3);

  SUBCASE("duplicated element across bases") {
    Decomposition bad = dec;
    const Coloured stolen = bad.complete[0].elements()[0];
    bad.complete[1].remove_colour(stolen.c);
    bad.complete[1].add(stolen);
    auto report = verify(inst, bad);
    CHECK_FALSE(report.ok());
    bool dup = false;
    for (const auto& v : report.violations) dup = dup || v.find("already used") != std::string::npos;
    CHECK(dup);
  }

  SUBCASE("complete entry of size n-1") {
    Decomposition bad = dec;
    bad.complete[2].remove_colour(0);
    bad.volume -= 1;
    auto report = verify(inst, bad);
    CHECK_FALSE(report.ok());
    bool size_flagged = false;
    for (const auto& v : report.violations)
      size_flagged = size_flagged || v.find("size") != std::string::npos;
    CHECK(size_flagged);
  }

  SUBCASE("k mismatch") {
    Decomposition bad = dec;
    bad.k = 1;
    CHECK_FALSE(verify(inst, bad).ok());
  }
}

TEST_CASE("constants for the linear-regime slack") {
  auto consts = compute_constants(0.8, 100);
  CHECK(consts.C <= 0.9);
  CHECK(consts.D == doctest::Approx(2 * consts.C + 4));
}
