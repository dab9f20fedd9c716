#include "rainbow/rebalance.hpp"

#include <algorithm>
#include <cmath>

#include "rainbow/errors.hpp"

namespace rainbow {

bool growth_constant_ok(double c, double epsilon, int ell) {
  const long double growth = std::pow(1.0L + epsilon / 2.0L, ell - 1);
  const long double lhs = c * growth / (1.0L - epsilon) - ell - 1;
  const long double rhs = c * growth * (1.0L + epsilon / 2.0L);
  return lhs >= rhs;
}

namespace {

bool growth_ok_everywhere(double c, double epsilon) {
  for (int ell = 1; ell <= 1000; ++ell)
    if (!growth_constant_ok(c, epsilon, ell)) return false;
  return true;
}

}  // namespace

double compute_C(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw contract_error("compute_C: epsilon must lie in (0,1)");
  double hi = 64.0;
  while (!growth_ok_everywhere(hi, epsilon)) {
    hi *= 2.0;
    if (hi > 1e12) throw theorem_violation("compute_C: no sustaining constant found");
  }
  double lo = 0.0;
  for (int iter = 0; iter < 80; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (growth_ok_everywhere(mid, epsilon))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

RebalanceConstants compute_constants(double epsilon, int n) {
  RebalanceConstants consts;
  consts.epsilon = epsilon;
  consts.C = compute_C(epsilon);
  consts.D = 2.0 * consts.C + 4.0;
  consts.n = n;
  const int top = static_cast<int>(std::ceil(consts.D));
  const double ratio = epsilon / (4.0 * consts.D * consts.D);
  consts.M.resize(top + 1);
  double m = n;
  for (int e = 0; e <= top; ++e) {
    consts.M[e] = m;
    m *= ratio;
  }
  return consts;
}

AssignResult assign_distinct_missing_colours(const Instance& inst, const Family& fam) {
  const int n = inst.n();
  const int f = static_cast<int>(fam.members.size());
  if (2 * f > n) throw contract_error("assign_distinct_missing_colours: requires f <= n/2");

  AssignResult res;
  res.family = fam;
  res.assignment.assign(f, -1);
  std::vector<bool> used_colour(n, false);
  bool changed = false;

  for (int i = 0; i < f; ++i) {
    Ris& s = res.family.members[i];
    int chosen = -1;
    if (s.size() == n) {
      for (int c = 0; c < n; ++c)
        if (!used_colour[c]) {
          chosen = c;
          break;
        }
    } else {
      const auto missing = s.missing_colours();
      for (int c : missing)
        if (!used_colour[c]) {
          chosen = c;
          break;
        }
      if (chosen < 0) {
        // every missing colour is taken: swap one of S's colours away
        const int probe_colour = missing.front();
        ManyGoodResult dich = many_good_dichotomy(inst, res.family, s, probe_colour);
        if (dich.free_addable) {
          DirectAdd action;
          action.member = i;
          action.cert = *dich.free_addable;
          action.cert.base = i;
          res.increase = action;
          res.assignment.clear();
          if (changed) res.family.version = fam.version + 1;
          return res;
        }
        const SwappableColour* pick = nullptr;
        for (const SwappableColour& sc : dich.swappables)
          if (!used_colour[sc.colour]) {
            pick = &sc;
            break;
          }
        if (!pick)
          throw theorem_violation(
              "assign_distinct_missing_colours: every swappable colour already assigned");
        s.remove_colour(pick->colour);
        s.add({pick->witness, probe_colour});
        changed = true;
        chosen = pick->colour;
      }
    }
    if (chosen < 0)
      throw theorem_violation("assign_distinct_missing_colours: ran out of colours");
    used_colour[chosen] = true;
    res.assignment[i] = chosen;
  }

  if (changed) {
    res.family.version = fam.version + 1;
    validate_family(inst, res.family);
    if (volume(res.family) != volume(fam))
      throw theorem_violation("assign_distinct_missing_colours: volume changed");
  }
  return res;
}

int compute_E(const Family& fam, const RebalanceConstants& consts) {
  const int cap = static_cast<int>(std::ceil(consts.D)) - 1;
  std::vector<int> missing;
  missing.reserve(fam.members.size());
  for (const Ris& s : fam.members) missing.push_back(consts.n - s.size());
  int best = 0;
  for (int e = 1; e <= cap; ++e) {
    int count = 0;
    for (int m : missing)
      if (m >= e) ++count;
    const double threshold = std::max(e < static_cast<int>(consts.M.size()) ? consts.M[e] : 0.0, 1.0);
    if (count >= threshold) best = e;
  }
  return best;
}

MissingDigraph build_missing_digraph(const Instance& inst, const Family& fam, int E,
                                     const std::vector<int>& assignment,
                                     const RebalanceConstants& consts) {
  MissingDigraph g;
  g.E = E;
  const int n = inst.n();
  const int f = static_cast<int>(fam.members.size());
  const UsedSet used = used_set(fam, n);
  std::vector<int> indegree(f, 0);
  std::vector<bool> eligible(f, false);

  for (int s0 = 0; s0 < f; ++s0) {
    const Ris& base = fam.members[s0];
    // transversal members take no additions; E = 0 means every deficient
    // member counts
    if (base.size() == n || n - base.size() < E) continue;
    eligible[s0] = true;
    const int b = assignment[s0];
    if (auto free = find_free_addable(inst, used, base, b)) {
      DirectAdd action;
      action.member = s0;
      action.cert = *free;
      action.cert.base = s0;
      g.augment = action;
      return g;
    }
    auto certs = witness_addable(inst, used, base, b);
    // bucket the witness-backed addables by the member holding them
    std::vector<std::vector<AddabilityCertificate>> per_member(f);
    for (AddabilityCertificate& cert : certs) {
      for (int s1 = 0; s1 < f; ++s1) {
        if (s1 == s0) continue;
        if (fam.members[s1].contains(cert.target)) {
          cert.base = s0;
          per_member[s1].push_back(cert);
          break;
        }
      }
    }
    for (int s1 = 0; s1 < f; ++s1) {
      if (s1 == s0) continue;
      if (static_cast<int>(per_member[s1].size()) >= consts.D) {
        g.heavy_pair = {s0, s1};
        return g;
      }
      if (static_cast<int>(per_member[s1].size()) >= E + 1) {
        ++indegree[s0];
        g.arcs.push_back({s1, s0, std::move(per_member[s1])});
      }
    }
  }

  const double bound = consts.epsilon * n / consts.D;
  if (bound >= 1.0) {
    for (int s0 = 0; s0 < f; ++s0)
      if (eligible[s0] && indegree[s0] < bound)
        throw theorem_violation("missing digraph: in-degree of member " + std::to_string(s0) +
                                " fell below epsilon*n/D");
  } else {
    g.skipped_bounds.push_back("in-degree bound epsilon*n/D = " + std::to_string(bound) +
                               " < 1; not asserted");
  }
  return g;
}

std::vector<OutStar> find_out_stars(const MissingDigraph& g, int E, int want) {
  std::vector<OutStar> out;
  if (want <= 0) return out;
  int max_vertex = -1;
  for (const MissingArc& arc : g.arcs) max_vertex = std::max({max_vertex, arc.from, arc.to});
  if (max_vertex < 0) return out;
  std::vector<bool> used(max_vertex + 1, false);

  for (int centre = 0; centre <= max_vertex; ++centre) {
    if (used[centre]) continue;
    std::vector<int> avail;
    for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a)
      if (g.arcs[a].from == centre && !used[g.arcs[a].to]) avail.push_back(a);
    std::sort(avail.begin(), avail.end(),
              [&](int a, int b) { return g.arcs[a].to < g.arcs[b].to; });
    if (static_cast<int>(avail.size()) < E + 1) continue;
    OutStar star;
    star.centre = centre;
    star.arc_indices.assign(avail.begin(), avail.begin() + (E + 1));
    used[centre] = true;
    for (int a : star.arc_indices) used[g.arcs[a].to] = true;
    out.push_back(std::move(star));
    if (static_cast<int>(out.size()) == want) break;
  }
  return out;
}

namespace {

// Maximum matching between arcs and candidate targets (Kuhn).
int sdr_matching(const std::vector<std::vector<int>>& adj, int right_size,
                 std::vector<int>* match_left_out) {
  std::vector<int> match_right(right_size, -1), match_left(adj.size(), -1);
  std::vector<bool> visited;
  auto augment = [&](auto&& self, int i) -> bool {
    for (int j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = true;
      if (match_right[j] < 0 || self(self, match_right[j])) {
        match_right[j] = i;
        match_left[i] = j;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    visited.assign(right_size, false);
    if (augment(augment, static_cast<int>(i))) ++matched;
  }
  if (match_left_out) *match_left_out = std::move(match_left);
  return matched;
}

}  // namespace

OutStarResult apply_out_star(const Instance& inst, const Family& fam, const MissingDigraph& g,
                             const OutStar& star, const std::vector<int>& assignment) {
  OutStarResult res;
  res.family = fam;
  res.family.version = fam.version + 1;
  const int n = inst.n();
  const int arcs = static_cast<int>(star.arc_indices.size());

  // survivors: per arc, the certificates still valid against the current family
  std::vector<std::vector<AddabilityCertificate>> live(arcs);
  {
    const UsedSet used = used_set(res.family, n);
    for (int j = 0; j < arcs; ++j) {
      const MissingArc& arc = g.arcs[star.arc_indices[j]];
      for (const AddabilityCertificate& cert : arc.certs) {
        if (!res.family.members[star.centre].contains(cert.target)) continue;
        if (!certificate_valid(inst, used, res.family.members[arc.to], cert)) continue;
        live[j].push_back(cert);
      }
    }
  }

  // distinct targets, lexicographically smallest per arc order, via greedy
  // choice with a Hall feasibility check on the remaining arcs
  std::vector<Coloured> all_targets;
  for (const auto& certs : live)
    for (const auto& cert : certs) all_targets.push_back(cert.target);
  std::sort(all_targets.begin(), all_targets.end());
  all_targets.erase(std::unique(all_targets.begin(), all_targets.end()), all_targets.end());
  auto target_index = [&](Coloured t) {
    return static_cast<int>(std::lower_bound(all_targets.begin(), all_targets.end(), t) -
                            all_targets.begin());
  };

  std::vector<int> chosen(arcs, -1);  // index into all_targets
  std::vector<bool> taken(all_targets.size(), false);
  for (int j = 0; j < arcs; ++j) {
    for (const AddabilityCertificate& cert : live[j]) {
      const int t = target_index(cert.target);
      if (taken[t]) continue;
      taken[t] = true;
      // feasibility of the rest
      std::vector<std::vector<int>> adj;
      for (int j2 = j + 1; j2 < arcs; ++j2) {
        adj.emplace_back();
        for (const AddabilityCertificate& c2 : live[j2]) {
          const int t2 = target_index(c2.target);
          if (!taken[t2]) adj.back().push_back(t2);
        }
      }
      if (sdr_matching(adj, static_cast<int>(all_targets.size()), nullptr) ==
          static_cast<int>(adj.size())) {
        chosen[j] = t;
        break;
      }
      taken[t] = false;
    }
    if (chosen[j] < 0) res.partial = true;
  }

  for (int j = 0; j < arcs; ++j) {
    if (chosen[j] < 0) continue;
    const MissingArc& arc = g.arcs[star.arc_indices[j]];
    const Coloured target = all_targets[chosen[j]];
    const AddabilityCertificate* cert = nullptr;
    for (const AddabilityCertificate& c : live[j])
      if (c.target == target) {
        cert = &c;
        break;
      }
    const UsedSet used_now = used_set(res.family, n);
    if (!certificate_valid(inst, used_now, res.family.members[arc.to], *cert)) {
      res.partial = true;
      continue;
    }
    res.family.members[star.centre].remove_colour(target.c);
    res.family.members[arc.to] = apply_certificate(res.family.members[arc.to], *cert);
    ++res.transferred;
  }

  validate_family(inst, res.family);
  if (volume(res.family) != volume(fam))
    throw theorem_violation("apply_out_star: volume changed");
  (void)assignment;
  return res;
}

ManyMissingResult many_missing_step(const Instance& inst, const Family& fam,
                                    const RebalanceConstants& consts) {
  ManyMissingResult res;
  res.family = fam;
  const int n = inst.n();
  const int round_cap = static_cast<int>(std::ceil(consts.D)) + 2;

  for (int round = 0; round < round_cap; ++round) {
    for (int i = 0; i < static_cast<int>(res.family.members.size()); ++i) {
      if (n - res.family.members[i].size() >= consts.D) {
        res.outcome = ManyMissingResult::Outcome::found_s0;
        res.s0 = i;
        res.diagnostics.push_back({round, 0, 0, 0, "found-s0"});
        return res;
      }
    }

    AssignResult assign = assign_distinct_missing_colours(inst, res.family);
    res.family = assign.family;
    if (assign.increase) {
      res.family = apply_action(inst, res.family, *assign.increase);
      res.outcome = ManyMissingResult::Outcome::volume_increased;
      res.diagnostics.push_back({round, 0, 0, 0, "volume-increase"});
      return res;
    }

    const int E = compute_E(res.family, consts);
    if (E == 0) {
      res.diagnostics.push_back({round, 0, 0, 0, "no-deficient-members"});
      res.outcome = ManyMissingResult::Outcome::no_progress;
      return res;
    }

    MissingDigraph g = build_missing_digraph(inst, res.family, E, assign.assignment, consts);
    if (g.augment) {
      res.family = apply_action(inst, res.family, *g.augment);
      res.outcome = ManyMissingResult::Outcome::volume_increased;
      res.diagnostics.push_back({round, E, 0, 0, "volume-increase"});
      return res;
    }
    if (g.heavy_pair) {
      res.outcome = ManyMissingResult::Outcome::found_pair;
      res.s0 = g.heavy_pair->first;
      res.s1 = g.heavy_pair->second;
      res.diagnostics.push_back({round, E, static_cast<int>(g.arcs.size()), 0, "found-pair"});
      return res;
    }

    const int next_e = E + 1;
    const double m_next =
        next_e < static_cast<int>(consts.M.size()) ? consts.M[next_e] : 0.0;
    const int want = std::max(1, static_cast<int>(std::ceil(m_next)));
    auto stars = find_out_stars(g, E, want);
    int applied = 0;
    for (const OutStar& star : stars) {
      OutStarResult r = apply_out_star(inst, res.family, g, star, assign.assignment);
      res.family = r.family;
      applied += r.transferred > 0 ? 1 : 0;
    }
    res.diagnostics.push_back({round, E, static_cast<int>(g.arcs.size()), applied, "stars"});
    if (applied == 0) {
      res.outcome = ManyMissingResult::Outcome::no_progress;
      return res;
    }
  }
  res.outcome = ManyMissingResult::Outcome::no_progress;
  return res;
}

}  // namespace rainbow
