#include "rainbow/solver.hpp"

#include <algorithm>
#include <cmath>

#include "rainbow/errors.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

namespace {

struct Attempt {
  const Instance& inst;
  const SolverConfig& cfg;
  int n;
  int f;
  RebalanceConstants consts;
  std::vector<int> member_order;
  std::vector<int> colour_order;
  std::vector<TraceRecord>* trace;
  long round = 0;

  void record(const std::string& action, const Family& fam, std::vector<int> q_sizes = {}) {
    if (trace) trace->push_back({round, action, volume(fam), std::move(q_sizes)});
  }

  // Free direct placements, scanning members and colours in the attempt's
  // shuffled order. First hit wins.
  std::optional<Family> direct_pass(const Family& fam, const UsedSet& used) {
    for (int i : member_order) {
      const Ris& s = fam.members[i];
      if (s.size() == n) continue;
      IndependenceProbe probe = inst.matroid().probe(s.project());
      for (int c : colour_order) {
        if (s.has_colour(c)) continue;
        for (ElementId x : inst.sorted_basis(c)) {
          if (used.contains(x, c)) continue;
          if (!probe.can_add(x)) continue;
          DirectAdd action;
          action.member = i;
          action.cert.target = {x, c};
          action.cert.colour_b = c;
          action.cert.base = i;
          Family next = apply_action(inst, fam, action);
          record("direct-add", next);
          return next;
        }
      }
    }
    return std::nullopt;
  }

  // Free swap-backed placements across all missing colours of each member.
  std::optional<Family> swap_pass(const Family& fam, const UsedSet& used) {
    for (int i : member_order) {
      const Ris& s = fam.members[i];
      if (s.size() == n || s.empty()) continue;
      auto free = find_any_free_addable(inst, used, s);
      if (!free) continue;
      DirectAdd action;
      action.member = i;
      action.cert = *free;
      action.cert.base = i;
      Family next = apply_action(inst, fam, action);
      record(free->kind == AddabilityCertificate::Kind::direct ? "direct-add" : "swap-add", next);
      return next;
    }
    return std::nullopt;
  }

  std::optional<Family> cascade_pass(const Family& fam, std::optional<int> s0_pick,
                                     std::optional<int> force_s1) {
    std::vector<int> candidates;
    if (s0_pick) {
      candidates.push_back(*s0_pick);
    } else {
      for (int i = 0; i < f; ++i)
        if (!fam.members[i].empty() && fam.members[i].size() < n) candidates.push_back(i);
      // deepest deficits first: more missing colours means a larger initial Q
      std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        return fam.members[a].size() < fam.members[b].size();
      });
    }
    for (int s0 : candidates) {
      std::vector<CascadeTraceRecord> steps;
      auto action = cascade_search(inst, fam, s0, force_s1, cfg.l_max,
                                   trace ? &steps : nullptr);
      if (action) {
        Family next = apply_action(inst, fam, *action);
        if (trace) {
          std::vector<int> q_sizes;
          for (const auto& st : steps) q_sizes.push_back(st.q_size);
          record(std::holds_alternative<CascadeFree>(*action) ? "cascade-free" : "cascade-tail",
                 next, std::move(q_sizes));
        }
        return next;
      }
    }
    return std::nullopt;
  }

  // Rebalance, then retry cascades from the state it manufactured. May
  // rewrite fam (volume preserved) even when no increase is found.
  std::optional<Family> rebalance_pass(Family& fam) {
    int incomplete = 0;
    for (const Ris& s : fam.members)
      if (s.size() < n) ++incomplete;
    if (2 * f > n || incomplete == 0 ||
        static_cast<double>(incomplete) < consts.epsilon * n / 2.0)
      return std::nullopt;
    ManyMissingResult reb = many_missing_step(inst, fam, consts);
    switch (reb.outcome) {
      case ManyMissingResult::Outcome::volume_increased:
        record("rebalance-augment", reb.family);
        return reb.family;
      case ManyMissingResult::Outcome::found_s0: {
        record("rebalance-s0", reb.family);
        Family staged = reb.family;
        if (auto next = cascade_pass(staged, reb.s0, std::nullopt)) return next;
        fam = staged;
        break;
      }
      case ManyMissingResult::Outcome::found_pair: {
        record("rebalance-pair", reb.family);
        Family staged = reb.family;
        if (auto next = cascade_pass(staged, reb.s0, reb.s1)) return next;
        fam = staged;
        break;
      }
      case ManyMissingResult::Outcome::no_progress:
        fam = reb.family;
        break;
    }
    return std::nullopt;
  }

  // One volume increase, or nullopt when every route is exhausted. The
  // family may be rewritten (volume preserved) even on failure.
  std::optional<Family> step(Family& fam) {
    UsedSet used = used_set(fam, n);
    if (auto next = direct_pass(fam, used)) return next;
    if (auto next = swap_pass(fam, used)) return next;
    if (cfg.mode == SolveMode::greedy) return std::nullopt;

    if (cfg.mode == SolveMode::proof_faithful) {
      // strict order: cascade only from a member missing >= D colours (or a
      // pair manufactured by rebalancing), then fall back to any member
      for (int i = 0; i < f; ++i)
        if (n - fam.members[i].size() >= consts.D)
          if (auto next = cascade_pass(fam, i, std::nullopt)) return next;
      if (auto next = rebalance_pass(fam)) return next;
      return cascade_pass(fam, std::nullopt, std::nullopt);
    }

    if (auto next = cascade_pass(fam, std::nullopt, std::nullopt)) return next;
    return rebalance_pass(fam);
  }
};

Decomposition family_to_decomposition(const Instance& inst, const Family& fam) {
  Decomposition dec;
  for (const Ris& s : fam.members) {
    if (s.size() == inst.n())
      dec.complete.push_back(s);
    else
      dec.partial.push_back(s);
  }
  dec.k = static_cast<int>(dec.complete.size());
  dec.volume = volume(fam);
  return dec;
}

Decomposition solve_exact(const Instance& inst, int f) {
  oracle::OracleBudget budget;
  budget.max_decomposition_n = inst.n();
  auto exact = oracle::exact_max_decomposition(inst, budget);
  Decomposition dec;
  const int keep = std::min(f, exact.k);
  for (int i = 0; i < keep; ++i) dec.complete.push_back(exact.bases[i]);
  for (int i = keep; i < f; ++i) dec.partial.push_back(Ris(inst.n()));
  dec.k = keep;
  dec.volume = keep * inst.n();
  return dec;
}

}  // namespace

Decomposition solve(const Instance& inst, const SolverConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw input_error("solve: epsilon must lie in (0,1)");
  const int n = inst.n();
  int f = cfg.f.value_or(static_cast<int>(std::floor((1.0 - cfg.epsilon) * n / 2.0)));
  if (f < 0 || f > n) throw input_error("solve: f must lie in [0, n]");
  if (f == 0) return {};

  if (n <= cfg.exhaustive_fallback_n) return solve_exact(inst, f);

  const RebalanceConstants consts = compute_constants(cfg.epsilon, n);
  const long max_rounds = cfg.max_rounds.value_or(10L * n * f);
  const int attempts = 1 + std::max(0, cfg.restarts);

  Decomposition best;
  bool have_best = false;

  for (int attempt = 0; attempt < attempts; ++attempt) {
    Rng rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt + 1)));
    Attempt run{inst, cfg, n, f, consts, {}, {}, nullptr};
    std::vector<TraceRecord> trace;
    if (cfg.collect_trace) run.trace = &trace;
    if (attempt == 0) {
      run.member_order.resize(f);
      run.colour_order.resize(n);
      for (int i = 0; i < f; ++i) run.member_order[i] = i;
      for (int c = 0; c < n; ++c) run.colour_order[c] = c;
    } else {
      run.member_order = rng.permutation(f);
      run.colour_order = rng.permutation(n);
    }

    Family fam = make_empty_family(n, f);
    Decomposition snapshot = family_to_decomposition(inst, fam);
    int stagnant = 0;
    while (run.round < max_rounds && volume(fam) < f * n) {
      ++run.round;
      const int before = volume(fam);
      auto next = run.step(fam);
      if (next) fam = std::move(*next);
      Decomposition now = family_to_decomposition(inst, fam);
      if (now.k > snapshot.k || (now.k == snapshot.k && now.volume > snapshot.volume))
        snapshot = std::move(now);
      if (volume(fam) > before)
        stagnant = 0;
      else if (++stagnant >= 3)
        break;
    }
    snapshot.rounds = run.round;
    snapshot.trace = std::move(trace);
    if (!have_best || snapshot.k > best.k ||
        (snapshot.k == best.k && snapshot.volume > best.volume)) {
      best = std::move(snapshot);
      have_best = true;
    }
    if (best.k == f) break;
  }
  return best;
}

VerifyReport verify(const Instance& inst, const Decomposition& dec) {
  VerifyReport report;
  const int n = inst.n();
  std::vector<const Ris*> all;
  for (const Ris& s : dec.complete) all.push_back(&s);
  for (const Ris& s : dec.partial) all.push_back(&s);

  UsedSet seen(n);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Ris& s = *all[i];
    const std::string name = i < dec.complete.size()
                                 ? "complete[" + std::to_string(i) + "]"
                                 : "partial[" + std::to_string(i - dec.complete.size()) + "]";
    if (s.colour_count() != n) {
      report.violations.push_back(name + ": wrong colour range");
      continue;
    }
    bool ris_ok = true;
    try {
      ris_ok = valid_ris(inst, s);
    } catch (const input_error& e) {
      report.violations.push_back(name + ": " + e.what());
      continue;
    }
    if (!ris_ok) report.violations.push_back(name + ": not a rainbow independent set");
    for (const Coloured& e : s.elements()) {
      if (seen.contains(e))
        report.violations.push_back(name + ": element (" + std::to_string(e.x) + "," +
                                    std::to_string(e.c + 1) + ") already used");
      else
        seen.insert(e);
    }
  }
  for (std::size_t i = 0; i < dec.complete.size(); ++i) {
    const Ris& s = dec.complete[i];
    if (s.size() != n)
      report.violations.push_back("complete[" + std::to_string(i) + "]: size " +
                                  std::to_string(s.size()) + " != n");
    else if (inst.matroid().rank_of(s.project()) != n)
      report.violations.push_back("complete[" + std::to_string(i) +
                                  "]: projection is not a basis");
  }
  if (dec.k != static_cast<int>(dec.complete.size()))
    report.violations.push_back("k does not match the number of complete bases");
  int vol = 0;
  for (const Ris* s : all) vol += s->size();
  if (dec.volume != vol) report.violations.push_back("volume field does not match the members");
  return report;
}

}  // namespace rainbow
