#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/cascade.hpp"

namespace rainbow {

/// Constants steering the rebalancing rounds. C is the smallest constant
/// making the cascade growth recurrence self-sustaining for the given
/// epsilon; D = 2C + 4; M[e] = (epsilon / (4 D^2))^e * n.
struct RebalanceConstants {
  double epsilon = 0.0;
  double C = 0.0;
  double D = 0.0;
  int n = 0;
  std::vector<double> M;  // indexed by e, up to ceil(D)
};

/// Whether a candidate constant sustains the growth recurrence at step ell:
/// C (1+eps/2)^(ell-1) / (1-eps) - ell - 1 >= C (1+eps/2)^ell.
bool growth_constant_ok(double c, double epsilon, int ell);

/// Minimal C (to within 1e-9) satisfying growth_constant_ok for
/// ell = 1..1000, found by expanding binary search.
double compute_C(double epsilon);

RebalanceConstants compute_constants(double epsilon, int n);

/// Distinct colours b_i, one per member, such that every non-transversal
/// member misses its colour; manufactured with simple swaps when needed.
/// If a volume increase surfaces on the way, `increase` is set instead and
/// `family` holds the state the action applies to. Requires f <= n/2.
struct AssignResult {
  Family family;
  std::optional<DirectAdd> increase;
  std::vector<int> assignment;  // member -> colour, when no increase
};
AssignResult assign_distinct_missing_colours(const Instance& inst, const Family& fam);

/// Largest e (capped below D) such that the family holds at least
/// max(M[e], 1) members missing at least e colours. Returns 0 when every
/// member is a transversal basis.
int compute_E(const Family& fam, const RebalanceConstants& consts);

/// Arc from -> to: member `from` holds at least E+1 elements that are
/// witness-addable to member `to` for its assigned colour.
struct MissingArc {
  int from = -1;
  int to = -1;
  std::vector<AddabilityCertificate> certs;
};
struct MissingDigraph {
  int E = 0;
  std::vector<MissingArc> arcs;
  std::optional<std::pair<int, int>> heavy_pair;  // (to, from) holding >= D addables
  std::optional<DirectAdd> augment;               // free addable found en route
  std::vector<std::string> skipped_bounds;        // sub-unit asymptotic bounds not asserted
};
MissingDigraph build_missing_digraph(const Instance& inst, const Family& fam, int E,
                                     const std::vector<int>& assignment,
                                     const RebalanceConstants& consts);

/// E+1 arcs leaving one centre, vertex-disjoint from other stars.
struct OutStar {
  int centre = -1;
  std::vector<int> arc_indices;
};
std::vector<OutStar> find_out_stars(const MissingDigraph& g, int E, int want);

/// Transfers one distinct element of the centre along every arc of the
/// star (each with its simple swap). Volume and disjointness preserved;
/// afterwards the centre misses at least E+1 colours. `transferred` falls
/// short of the arc count only if certificates went stale mid-application.
struct OutStarResult {
  Family family;
  int transferred = 0;
  bool partial = false;
};
OutStarResult apply_out_star(const Instance& inst, const Family& fam, const MissingDigraph& g,
                             const OutStar& star, const std::vector<int>& assignment);

struct RebalanceRound {
  int round = 0;
  int E = 0;
  int arcs = 0;
  int stars_applied = 0;
  std::string outcome;
};

/// One rebalancing pass: repeat (assign colours, build digraph, apply
/// out-stars) until the volume grows, a member misses >= D colours, some
/// pair offers >= D addables, or a round stalls.
struct ManyMissingResult {
  enum class Outcome { volume_increased, found_s0, found_pair, no_progress };
  Outcome outcome = Outcome::no_progress;
  Family family;
  int s0 = -1;
  int s1 = -1;
  std::vector<RebalanceRound> diagnostics;
};
ManyMissingResult many_missing_step(const Instance& inst, const Family& fam,
                                    const RebalanceConstants& consts);

}  // namespace rainbow
