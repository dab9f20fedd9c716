#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/rebalance.hpp"

namespace rainbow {

enum class SolveMode { proof_faithful, greedy, hybrid };

struct SolverConfig {
  double epsilon = 0.2;
  std::optional<int> f;  // default floor((1 - epsilon) n / 2)
  SolveMode mode = SolveMode::hybrid;
  int l_max = 12;                     // cascade length cap
  std::optional<long> max_rounds;     // default 10 n f
  std::uint64_t seed = 0;
  int exhaustive_fallback_n = 4;      // route tiny instances to the exact search
  int restarts = 8;                   // additional shuffled attempts on stalls
  bool collect_trace = false;
};

struct TraceRecord {
  long round = 0;
  std::string action;
  int volume = 0;
  std::vector<int> q_sizes;
};

struct Decomposition {
  std::vector<Ris> complete;  // size-n members, i.e. transversal bases
  std::vector<Ris> partial;
  int k = 0;
  int volume = 0;
  long rounds = 0;
  std::vector<TraceRecord> trace;
};

/// Grows f disjoint rainbow independent sets from empty, by free additions,
/// swap-backed additions, cascades, and rebalancing, until every member is
/// a transversal basis or the round budget runs out. Deterministic for a
/// fixed (instance, config, seed). Instances with n <= exhaustive_fallback_n
/// are answered by the exact backtracking search instead.
Decomposition solve(const Instance& inst, const SolverConfig& cfg = {});

struct VerifyReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks everything a decomposition promises: members are RISs, pairwise
/// disjoint in the universe, complete entries have size n with basis
/// projections, and k / volume match the lists.
VerifyReport verify(const Instance& inst, const Decomposition& dec);

}  // namespace rainbow
