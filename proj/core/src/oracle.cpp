#include "rainbow/oracle.hpp"

#include <algorithm>
#include <set>

#include "rainbow/errors.hpp"

// Everything here re-derives the definitions with plain loops and
// Matroid::is_independent only, so the engine implementations can be tested
// against genuinely independent code.

namespace rainbow::oracle {

namespace {

// Definition-level RIS test on a raw list of coloured elements.
bool def_is_ris(const Instance& inst, std::span<const Coloured> set) {
  std::vector<int> colours;
  std::vector<ElementId> elems;
  for (const Coloured& e : set) {
    colours.push_back(e.c);
    elems.push_back(e.x);
  }
  std::sort(colours.begin(), colours.end());
  if (std::adjacent_find(colours.begin(), colours.end()) != colours.end()) return false;
  std::sort(elems.begin(), elems.end());
  if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) return false;
  return inst.matroid().is_independent(elems);
}

std::vector<Coloured> minus(std::vector<Coloured> set, Coloured e) {
  set.erase(std::remove(set.begin(), set.end(), e), set.end());
  return set;
}

bool in_family_used(const Family& fam, Coloured e) {
  for (const Ris& s : fam.members)
    if (s.contains(e)) return true;
  return false;
}

// Is (x,c) addable to `base` missing colour b, through the witness branch of
// the definition only?
bool witness_addable_def(const Instance& inst, const Family& fam,
                         const std::vector<Coloured>& base, int b, Coloured target) {
  for (const Coloured& rem : base) {
    if (rem.c != target.c) continue;
    for (ElementId y : inst.basis(b)) {
      if (in_family_used(fam, {y, b})) continue;
      std::vector<Coloured> next = minus(base, rem);
      next.push_back({y, b});
      next.push_back(target);
      if (def_is_ris(inst, next)) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Coloured> brute_force_addable(const Instance& inst, const Family& fam, const Ris& s,
                                          int b) {
  if (s.has_colour(b)) throw contract_error("brute_force_addable: colour b appears in S");
  const std::vector<Coloured> base = s.elements();
  std::vector<Coloured> out;
  for (int c = 0; c < inst.n(); ++c) {
    for (ElementId x : inst.basis(c)) {
      Coloured target{x, c};
      if (s.contains(target)) continue;
      std::vector<Coloured> direct = base;
      direct.push_back(target);
      if (def_is_ris(inst, direct) || witness_addable_def(inst, fam, base, b, target)) {
        out.push_back(target);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct CascadeSearch {
  const Instance& inst;
  const Family& fam;
  std::span<const int> members;
  std::set<Coloured> found;

  bool member_contains(Coloured e) const {
    for (int id : members)
      if (fam.members[id].contains(e)) return true;
    return false;
  }

  // base: S_i minus its outgoing transfer; b: the freeing colour c_i.
  void walk(std::size_t i, const std::vector<Coloured>& base, int b, std::vector<int>& used) {
    if (i + 1 == members.size()) {
      for (int c = 0; c < inst.n(); ++c) {
        if (std::find(used.begin(), used.end(), c) != used.end()) continue;
        for (ElementId x : inst.basis(c)) {
          Coloured target{x, c};
          if (member_contains(target)) continue;
          if (found.count(target)) continue;
          if (witness_addable_def(inst, fam, base, b, target)) found.insert(target);
        }
      }
      return;
    }
    const Ris& next_member = fam.members[members[i + 1]];
    for (const Coloured& transfer : next_member.elements()) {
      if (std::find(used.begin(), used.end(), transfer.c) != used.end()) continue;
      if (!witness_addable_def(inst, fam, base, b, transfer)) continue;
      std::vector<Coloured> next_base;
      for (const Coloured& e : next_member.elements())
        if (!(e == transfer)) next_base.push_back(e);
      used.push_back(transfer.c);
      walk(i + 1, next_base, transfer.c, used);
      used.pop_back();
    }
  }
};

}  // namespace

std::vector<Coloured> brute_force_cascade_Q(const Instance& inst, const Family& fam,
                                            std::span<const int> member_ids,
                                            const OracleBudget& budget) {
  if (member_ids.empty()) throw contract_error("brute_force_cascade_Q: empty sequence");
  if (static_cast<int>(member_ids.size()) > budget.max_cascade_len)
    throw contract_error("brute_force_cascade_Q: sequence longer than the oracle budget");
  {
    std::vector<int> ids(member_ids.begin(), member_ids.end());
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      throw contract_error("brute_force_cascade_Q: repeated member");
  }
  CascadeSearch search{inst, fam, member_ids, {}};
  const Ris& s0 = fam.members[member_ids.front()];
  for (int c0 : s0.missing_colours()) {
    std::vector<int> used{c0};
    search.walk(0, s0.elements(), c0, used);
  }
  return {search.found.begin(), search.found.end()};
}

namespace {

struct DecompositionSearch {
  const Instance& inst;
  int k;
  std::vector<Ris> bases;
  std::vector<std::vector<bool>> taken;  // taken[c][x]: (x,c) already assigned

  bool fill(int c, int j) {
    if (c == inst.n()) return true;
    if (j == k) return fill(c + 1, 0);
    std::vector<ElementId> cand(inst.basis(c).begin(), inst.basis(c).end());
    std::sort(cand.begin(), cand.end());
    for (ElementId x : cand) {
      if (taken[c][x]) continue;
      if (bases[j].uses_element(x)) continue;
      auto proj = bases[j].project();
      proj.push_back(x);
      if (!inst.matroid().is_independent(proj)) continue;
      taken[c][x] = true;
      bases[j].add({x, c});
      if (fill(c, j + 1)) return true;
      bases[j].remove_colour(c);
      taken[c][x] = false;
    }
    return false;
  }
};

}  // namespace

ExactDecomposition exact_max_decomposition(const Instance& inst, const OracleBudget& budget) {
  if (inst.n() > budget.max_decomposition_n)
    throw contract_error("exact_max_decomposition: instance rank exceeds the oracle budget");
  for (int k = inst.n(); k >= 1; --k) {
    DecompositionSearch search{
        inst, k, std::vector<Ris>(k, Ris(inst.n())),
        std::vector<std::vector<bool>>(inst.n(),
                                       std::vector<bool>(inst.matroid().ground_size(), false))};
    if (search.fill(0, 0)) return {k, std::move(search.bases)};
  }
  return {0, {}};
}

AxiomReport matroid_axiom_check(const Matroid& m, const OracleBudget& budget) {
  return matroid_axiom_check(
      m.ground_size(), [&m](std::span<const ElementId> s) { return m.is_independent(s); }, budget);
}

AxiomReport matroid_axiom_check(int ground_size,
                                const std::function<bool(std::span<const ElementId>)>& indep,
                                const OracleBudget& budget) {
  AxiomReport report;
  if (ground_size > budget.max_axiom_ground)
    throw contract_error("matroid_axiom_check: ground set exceeds the oracle budget");
  const int full = 1 << ground_size;
  auto set_of = [&](unsigned mask) {
    std::vector<ElementId> s;
    for (int e = 0; e < ground_size; ++e)
      if (mask & (1u << e)) s.push_back(e);
    return s;
  };
  std::vector<bool> ind(full);
  for (int mask = 0; mask < full; ++mask) ind[mask] = indep(set_of(mask));

  if (!ind[0]) report.violations.push_back("empty set is not independent");

  for (int mask = 0; mask < full; ++mask) {
    if (!ind[mask]) continue;
    for (int e = 0; e < ground_size; ++e) {
      if (!(mask & (1 << e))) continue;
      if (!ind[mask & ~(1 << e)]) {
        report.violations.push_back("hereditary violation: removing element " + std::to_string(e) +
                                    " from an independent set left a dependent set");
        if (report.violations.size() > 50) return report;
      }
    }
  }

  std::vector<int> popcount(full, 0);
  for (int mask = 1; mask < full; ++mask) popcount[mask] = popcount[mask >> 1] + (mask & 1);
  for (int a = 0; a < full; ++a) {
    if (!ind[a]) continue;
    for (int b = 0; b < full; ++b) {
      if (!ind[b] || popcount[a] <= popcount[b]) continue;
      bool extended = false;
      for (int e = 0; e < ground_size && !extended; ++e)
        if ((a & (1 << e)) && !(b & (1 << e)) && ind[b | (1 << e)]) extended = true;
      if (!extended) {
        report.violations.push_back("augmentation violation for |A|=" +
                                    std::to_string(popcount[a]) +
                                    ", |B|=" + std::to_string(popcount[b]));
        if (report.violations.size() > 50) return report;
      }
    }
  }
  return report;
}

}  // namespace rainbow::oracle
