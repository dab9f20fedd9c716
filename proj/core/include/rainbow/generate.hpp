#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rainbow/ris.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

enum class InstanceKind { uniform_identical, linear_random, graphic_random };

std::string kind_name(InstanceKind kind);
std::optional<InstanceKind> kind_from_name(const std::string& name);

/// Seeded random instance. uniform-identical: the free matroid with every
/// class equal to the ground basis. linear-random: 2n random full-rank
/// columns over GF(p), classes extracted by seeded greedy passes.
/// graphic-random: a random spanning tree plus 2n random extra edges on n+1
/// vertices, classes are random spanning trees. Deterministic per seed.
Instance generate_instance(InstanceKind kind, int n, std::uint64_t seed, std::uint32_t p = 5);

/// A random disjoint family of f valid RISs, grown by random legal
/// insertions until target_volume (or the attempt budget) is reached.
Family random_family(const Instance& inst, Rng& rng, int f, int target_volume);

}  // namespace rainbow
