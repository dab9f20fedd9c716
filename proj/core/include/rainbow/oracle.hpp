#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rainbow/ris.hpp"

namespace rainbow::oracle {

/// Hard limits for the brute-force searches. Exceeding a budget is refused
/// with contract_error rather than silently truncated.
struct OracleBudget {
  int max_decomposition_n = 4;
  int max_cascade_len = 3;
  int max_axiom_ground = 10;
};

/// All (S,b)-addable elements, straight from the definition: every pair of
/// the universe is tried against every removal and every witness. Sorted.
std::vector<Coloured> brute_force_addable(const Instance& inst, const Family& fam, const Ris& s,
                                          int b);

/// All elements cascade-addable with respect to the given member sequence,
/// by exhaustive enumeration of freeing colours, transfers and witnesses.
std::vector<Coloured> brute_force_cascade_Q(const Instance& inst, const Family& fam,
                                            std::span<const int> member_ids,
                                            const OracleBudget& budget = {});

struct ExactDecomposition {
  int k = 0;
  std::vector<Ris> bases;
};

/// Exact maximum number of disjoint transversal bases, by backtracking over
/// the universe with independence pruning. Colours ascending, elements
/// ascending, bases filled round-robin.
ExactDecomposition exact_max_decomposition(const Instance& inst, const OracleBudget& budget = {});

struct AxiomReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustively verifies the hereditary and augmentation axioms (and that
/// the empty set is independent) over every subset pair of the ground set.
AxiomReport matroid_axiom_check(const Matroid& m, const OracleBudget& budget = {});

/// Same check against an arbitrary independence predicate, for exercising
/// deliberately corrupted oracles.
AxiomReport matroid_axiom_check(int ground_size,
                                const std::function<bool(std::span<const ElementId>)>& indep,
                                const OracleBudget& budget = {});

}  // namespace rainbow::oracle
