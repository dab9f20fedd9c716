// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/cascade.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/io.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/rebalance.hpp"

using namespace rainbow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Instance random_instance(Rng& rng, int n_min, int n_max) {
  const int n = n_min + static_cast<int>(rng.below(n_max - n_min + 1));
  switch (rng.below(3)) {
    case 0: return generate_instance(InstanceKind::uniform_identical, n, rng.next());
    case 1: return generate_instance(InstanceKind::linear_random, n, rng.next());
    default: return generate_instance(InstanceKind::graphic_random, n, rng.next());
  }
}

struct State {
  Instance inst;
  Family fam;
  int member;
  int missing;
};

std::optional<State> draw_state(Rng& rng, int n_min, int n_max, bool nonempty, bool f_below_n) {
  Instance inst = random_instance(rng, n_min, n_max);
  const int n = inst.n();
  const int f_cap = f_below_n ? n - 1 : n;
  const int f = 1 + static_cast<int>(rng.below(std::max(1, f_cap)));
  Rng fam_rng(rng.next());
  Family fam = random_family(inst, fam_rng, f, static_cast<int>(rng.below(n * f + 1)));
  std::vector<int> eligible;
  for (int i = 0; i < f; ++i) {
    if (fam.members[i].size() == n) continue;
    if (nonempty && fam.members[i].empty()) continue;
    eligible.push_back(i);
  }
  if (eligible.empty()) return std::nullopt;
  const int member = eligible[rng.below(eligible.size())];
  const auto missing = fam.members[member].missing_colours();
  return State{std::move(inst), std::move(fam), member,
               missing[static_cast<std::size_t>(rng.below(missing.size()))]};
}

// ---- criterion bodies: return "" on pass, a reason on failure ----------

std::string criterion_axioms() {
  const auto start = Clock::now();
  Rng rng(20240801);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    Matroid m = [&]() {
      switch (i % 3) {
        case 0: {
          const int ground = 1 + static_cast<int>(rng.below(8));
          return Matroid::uniform(ground, static_cast<int>(rng.below(ground + 1)));
        }
        case 1: {
          const int v = 2 + static_cast<int>(rng.below(4));
          const int e = 1 + static_cast<int>(rng.below(8));
          std::vector<std::pair<int, int>> edges;
          for (int j = 0; j < e; ++j) {
            int a = static_cast<int>(rng.below(v));
            int b = static_cast<int>(rng.below(v - 1));
            if (b >= a) ++b;
            edges.push_back({a, b});
          }
          return Matroid::graphic(v, std::move(edges));
        }
        default: {
          const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[rng.below(3)];
          const int dim = 1 + static_cast<int>(rng.below(4));
          const int cols = 1 + static_cast<int>(rng.below(8));
          std::vector<std::vector<std::uint32_t>> columns(cols,
                                                          std::vector<std::uint32_t>(dim));
          for (auto& col : columns)
            for (auto& x : col) x = static_cast<std::uint32_t>(rng.below(p));
          return Matroid::linear(p, std::move(columns));
        }
      }
    }();
    if (!oracle::matroid_axiom_check(m).ok()) ++violations;
  }
  const double elapsed = seconds_since(start);
  if (violations > 0) return std::to_string(violations) + " instances violated the axioms";
  if (elapsed >= 60.0) return "took " + std::to_string(elapsed) + "s (budget 60s)";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "200 instances, %.2fs", elapsed);
  return std::string("|") + buf;
}

std::string criterion_addable_equivalence() {
  Rng rng(20240802);
  int done = 0, mismatches = 0;
  while (done < 1000) {
    auto state = draw_state(rng, 2, 6, false, false);
    if (!state) continue;
    ++done;
    const Ris& s = state->fam.members[state->member];
    std::vector<Coloured> targets;
    for (const auto& cert : enumerate_addable(state->inst, state->fam, s, state->missing))
      targets.push_back(cert.target);
    if (targets != oracle::brute_force_addable(state->inst, state->fam, s, state->missing))
      ++mismatches;
  }
  if (mismatches > 0) return std::to_string(mismatches) + " mismatches in 1000 triples";
  return "|1000 triples, set-equal";
}

std::string criterion_dichotomies() {
  Rng rng(20240803);
  int done = 0;
  while (done < 1000) {
    auto state = draw_state(rng, 2, 8, true, true);
    if (!state) continue;
    ++done;
    const Ris& s = state->fam.members[state->member];
    try {
      auto many = many_good_dichotomy(state->inst, state->fam, s, state->missing);
      if (!many.free_addable) {
        const int bound = state->inst.n() -
                          static_cast<int>(used_set(state->fam, state->inst.n())
                                               .slice(state->missing)
                                               .size());
        if (static_cast<int>(many.swappables.size()) < bound)
          return "many-good bound violated at trial " + std::to_string(done);
      }
      auto count = count_addable_or_augment(state->inst, state->fam, s, state->missing);
      if (!count.augment) {
        const long bound = static_cast<long>(state->inst.n() - s.size()) *
                           (state->inst.n() - static_cast<long>(state->fam.members.size()));
        if (static_cast<long>(count.addable.size()) < bound)
          return "1-addability bound violated at trial " + std::to_string(done);
      }
    } catch (const theorem_violation& e) {
      return std::string("assertion failed: ") + e.what();
    }
  }
  return "|1000 trials, zero violations";
}

std::string criterion_matching() {
  Rng rng(20240804);
  int done = 0;
  while (done < 1000) {
    auto state = draw_state(rng, 2, 8, true, false);
    if (!state) continue;
    ++done;
    const Ris& s = state->fam.members[state->member];
    const int b = static_cast<int>(rng.below(state->inst.n()));
    std::vector<std::pair<Coloured, ElementId>> inj;
    try {
      inj = build_witness_injection(state->inst, s, b);
    } catch (const theorem_violation&) {
      return "Hall failure at trial " + std::to_string(done);
    }
    if (inj.size() != static_cast<std::size_t>(s.size()))
      return "injection not perfect on S at trial " + std::to_string(done);
    std::vector<ElementId> images;
    for (const auto& [from, to] : inj) {
      images.push_back(to);
      Ris rest = s;
      rest.remove_colour(from.c);
      IndependenceProbe probe = state->inst.matroid().probe(rest.project());
      if (!probe.can_add(to)) return "image dependent at trial " + std::to_string(done);
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      return "injection not injective at trial " + std::to_string(done);
  }
  return "|1000 injections, zero Hall failures";
}

// shared by criteria 5 and 6
struct CascadeStats {
  int executed = 0;
  int growth_checks = 0;
  std::string failure;
};

CascadeStats run_cascade_suite() {
  CascadeStats stats;
  Rng rng(20240805);
  while (stats.executed < 1000) {
    auto state = draw_state(rng, 3, 8, true, true);
    if (!state) continue;
    const int n = state->inst.n();
    std::vector<QEntry> q;
    try {
      q = initial_Q(state->inst, state->fam, state->member);
    } catch (const contract_error&) {
      continue;
    }
    std::vector<int> used{state->member};
    for (int level = 1; level <= 3 && !q.empty(); ++level) {
      // execute a couple of chains from this level on a copy
      for (std::size_t pick = 0; pick < q.size() && pick < 2 && stats.executed < 1000; ++pick) {
        const QEntry& entry = q[pick];
        try {
          Family after = execute_cascade(state->inst, state->fam, entry.chain, std::nullopt);
          if (volume(after) != volume(state->fam)) {
            stats.failure = "cascade changed the volume";
            return stats;
          }
          validate_family(state->inst, after);
          Ris last = after.members[entry.chain.members.back()];
          last.add(entry.chain.target);
          if (!valid_ris(state->inst, last)) {
            stats.failure = "last member cannot absorb the freed target";
            return stats;
          }
          ++stats.executed;
        } catch (const std::logic_error& e) {
          stats.failure = e.what();
          return stats;
        }
      }
      if (static_cast<int>(used.size()) >= static_cast<int>(state->fam.members.size())) break;
      int next;
      try {
        next = choose_next(state->fam, used, q);
      } catch (const contract_error&) {
        break;  // a Q element is free; the solver would augment here
      } catch (const theorem_violation& e) {
        stats.failure = e.what();
        return stats;
      }
      std::vector<int> seq = used;
      seq.push_back(next);
      ExtendResult res;
      try {
        res = extend_Q(state->inst, state->fam, seq, q);
      } catch (const theorem_violation& e) {
        stats.failure = e.what();  // includes growth-bound violations
        return stats;
      }
      if (res.augment) break;
      const long inside = [&] {
        long count = 0;
        for (const QEntry& entry : q)
          if (state->fam.members[next].contains(entry.elem)) ++count;
        return count;
      }();
      const long l = static_cast<long>(seq.size()) - 1;
      const long rhs =
          inside * (n - static_cast<long>(state->fam.members.size()) - l) - (l + 1) * n;
      if (rhs > 0) ++stats.growth_checks;
      q = std::move(res.next);
      used.push_back(next);
    }
  }
  return stats;
}

CascadeStats g_cascade_stats;

std::string criterion_cascade_execution() {
  g_cascade_stats = run_cascade_suite();
  if (!g_cascade_stats.failure.empty()) return g_cascade_stats.failure;
  return "|" + std::to_string(g_cascade_stats.executed) + " executions, all postconditions hold";
}

std::string criterion_cascade_growth() {
  if (!g_cascade_stats.failure.empty()) return g_cascade_stats.failure;
  return "|" + std::to_string(g_cascade_stats.growth_checks) +
         " binding growth bounds, zero violations";
}

std::string criterion_exact_agreement() {
  Rng rng(20240807);
  int done = 0;
  double worst = 0.0;
  while (done < 102) {
    Instance inst = random_instance(rng, 2, 4);
    ++done;
    const auto start = Clock::now();
    SolverConfig cfg;
    cfg.f = inst.n();
    Decomposition dec = solve(inst, cfg);
    auto exact = oracle::exact_max_decomposition(inst);
    const double elapsed = seconds_since(start);
    worst = std::max(worst, elapsed);
    if (exact.k != inst.n())
      return "oracle found k=" + std::to_string(exact.k) + " < n on a rank-" +
             std::to_string(inst.n()) + " instance";
    if (dec.k != exact.k) return "solver k=" + std::to_string(dec.k) + " != oracle k";
    if (!verify(inst, dec).ok()) return "solver output failed verification";
    if (elapsed >= 5.0) return "instance took " + std::to_string(elapsed) + "s (budget 5s)";
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "102 instances, k = n on all, worst %.2fs", worst);
  return std::string("|") + buf;
}

std::string criterion_end_to_end() {
  const std::vector<InstanceKind> kinds{InstanceKind::uniform_identical,
                                        InstanceKind::linear_random};
  const std::vector<int> sizes{10, 20, 40};
  const int per_cell = 10;
  int total = 0, hits = 0;
  double worst40 = 0.0;
  for (InstanceKind kind : kinds) {
    for (int n : sizes) {
      for (int i = 0; i < per_cell; ++i) {
        Instance inst = generate_instance(kind, n, 1000 + i);
        SolverConfig cfg;
        cfg.epsilon = 0.2;
        cfg.mode = SolveMode::hybrid;
        cfg.restarts = 8;
        cfg.seed = 1000 + i;
        const auto start = Clock::now();
        Decomposition dec = solve(inst, cfg);
        const double elapsed = seconds_since(start);
        if (n == 40) {
          worst40 = std::max(worst40, elapsed);
          if (elapsed >= 60.0)
            return "n=40 instance took " + std::to_string(elapsed) + "s (budget 60s)";
        }
        if (!verify(inst, dec).ok()) return "solve output failed verification";
        ++total;
        if (dec.k >= (3 * n) / 10) ++hits;
      }
    }
  }
  const double rate = 100.0 * hits / total;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%d/%d at k >= floor(0.3n) (%.1f%%), worst n=40 %.2fs", hits,
                total, rate, worst40);
  if (rate < 95.0) return buf;
  return std::string("|") + buf;
}

std::string criterion_constants() {
  const double c45 = compute_C(0.8);
  if (c45 > 0.9) return "compute_C(4/5) = " + std::to_string(c45) + " > 9/10";
  for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 0.95}) {
    const double c = compute_C(eps);
    for (int ell = 1; ell <= 1000; ++ell)
      if (!growth_constant_ok(c, eps, ell))
        return "growth inequality fails at epsilon=" + std::to_string(eps) +
               ", ell=" + std::to_string(ell);
    auto consts = compute_constants(eps, 50);
    if (std::abs(consts.D - (2 * consts.C + 4)) > 1e-9) return "D != 2C + 4";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "C(4/5) = %.4f <= 0.9", c45);
  return std::string("|") + buf;
}

std::string criterion_rebalance() {
  Rng rng(20240810);
  int rounds = 0, stars_applied = 0;
  while (rounds < 500) {
    const bool wide = rng.chance(0.4);
    Instance inst = random_instance(rng, 8, wide ? 16 : 40);
    const int n = inst.n();
    auto consts = compute_constants(wide ? 0.8 : 0.3, n);
    const int f = 1 + static_cast<int>(rng.below(std::max(1, n / 2)));
    Rng fam_rng(rng.next());
    Family fam = random_family(inst, fam_rng, f, n * f / 2 + static_cast<int>(rng.below(n)));
    try {
      ManyMissingResult res = many_missing_step(inst, fam, consts);
      validate_family(inst, res.family);
      const int dv = volume(res.family) - volume(fam);
      if (res.outcome == ManyMissingResult::Outcome::volume_increased ? dv != 1 : dv != 0)
        return "volume drifted during a rebalance round";
      ++rounds;

      // drive out-stars explicitly so the centre postcondition is exercised;
      // arcs are built straight from the witness-addable buckets, without the
      // free-addable short circuit (an augment elsewhere does not change the
      // star mechanics being checked)
      auto assign = assign_distinct_missing_colours(inst, fam);
      if (!assign.increase) {
        const UsedSet used = used_set(assign.family, n);
        for (int e = 0; e <= 1; ++e) {
          MissingDigraph g;
          g.E = e;
          for (int s0 = 0; s0 < f; ++s0) {
            const Ris& base = assign.family.members[s0];
            if (base.size() == n || n - base.size() < e) continue;
            auto certs = witness_addable(inst, used, base, assign.assignment[s0]);
            std::vector<std::vector<AddabilityCertificate>> per_member(f);
            for (AddabilityCertificate& cert : certs)
              for (int s1 = 0; s1 < f; ++s1) {
                if (s1 == s0) continue;
                if (assign.family.members[s1].contains(cert.target)) {
                  per_member[s1].push_back(cert);
                  break;
                }
              }
            for (int s1 = 0; s1 < f; ++s1)
              if (static_cast<int>(per_member[s1].size()) >= e + 1)
                g.arcs.push_back({s1, s0, std::move(per_member[s1])});
          }
          for (const OutStar& star : find_out_stars(g, e, 4)) {
            auto r = apply_out_star(inst, assign.family, g, star, assign.assignment);
            if (volume(r.family) != volume(assign.family))
              return "out-star changed the volume";
            validate_family(inst, r.family);
            if (!r.partial) {
              if (inst.n() - r.family.members[star.centre].size() < e + 1)
                return "out-star centre misses fewer than E+1 colours";
              ++stars_applied;
            }
          }
        }
      }
    } catch (const std::logic_error& e) {
      return std::string("invariant violation: ") + e.what();
    }
  }
  return "|500 rounds, " + std::to_string(stars_applied) + " out-stars applied, zero violations";
}

std::string criterion_determinism() {
  Rng rng(20240811);
  for (int trial = 0; trial < 6; ++trial) {
    Instance inst = random_instance(rng, 5, 10);
    SolverConfig cfg;
    cfg.seed = 42 + trial;
    cfg.restarts = 2;
    const std::string once = serialize_decomposition(inst, cfg, solve(inst, cfg));
    const std::string twice = serialize_decomposition(inst, cfg, solve(inst, cfg));
    if (once != twice) return "identical inputs produced different bytes";
    SolveDocument doc = parse_decomposition(once);
    if (serialize_decomposition(doc.instance, doc.config, doc.decomposition) != once)
      return "parse-serialize is not the identity";
    const std::string inst_doc = serialize_instance(inst);
    if (serialize_instance(parse_instance(inst_doc)) != inst_doc)
      return "instance round-trip is not byte-stable";
  }
  return "|6 instances, byte-identical reruns and round-trips";
}

struct Criterion {
  int id;
  std::string name;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "matroid axiom suite", criterion_axioms},
      {2, "addability oracle equivalence", criterion_addable_equivalence},
      {3, "theorem-dichotomy suite", criterion_dichotomies},
      {4, "witness injection matching", criterion_matching},
      {5, "cascade execution", criterion_cascade_execution},
      {6, "cascade growth bound", criterion_cascade_growth},
      {7, "exact-optimum agreement", criterion_exact_agreement},
      {8, "end-to-end empirical target", criterion_end_to_end},
      {9, "constant computation", criterion_constants},
      {10, "rebalance invariants", criterion_rebalance},
      {11, "determinism and round-trip", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result = std::string("unexpected exception: ") + e.what();
    }
    const bool pass = !result.empty() && result.front() == '|';
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion.id,
                criterion.name.c_str(), result.empty() ? "" : " — ",
                pass ? result.c_str() + 1 : result.c_str());
    std::fflush(stdout);
  }
  return failures;
}
