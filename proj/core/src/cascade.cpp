#include "rainbow/cascade.hpp"

#include <algorithm>
#include <map>

#include "rainbow/errors.hpp"

namespace rainbow {

bool chain_less(const CascadeChain& a, const CascadeChain& b) {
  auto key = [](const CascadeChain& ch) {
    return std::tie(ch.members, ch.freeing, ch.witnesses, ch.transfers, ch.removed);
  };
  if (a.target != b.target) return a.target < b.target;
  return key(a) < key(b);
}

void validate_chain(const Instance& inst, const Family& fam, const CascadeChain& chain) {
  if (chain.family_version != fam.version)
    throw stale_certificate("cascade chain was built against family version " +
                            std::to_string(chain.family_version) + ", current is " +
                            std::to_string(fam.version));
  const int l = chain.length();
  auto fail = [](const std::string& why) { throw theorem_violation("cascade chain: " + why); };
  if (l < 1) fail("empty member sequence");
  if (static_cast<int>(chain.freeing.size()) != l ||
      static_cast<int>(chain.witnesses.size()) != l ||
      static_cast<int>(chain.removed.size()) != l ||
      static_cast<int>(chain.transfers.size()) != l - 1)
    fail("inconsistent field lengths");
  {
    std::vector<int> ids(chain.members);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) fail("repeated member");
    if (ids.front() < 0 || ids.back() >= static_cast<int>(fam.members.size()))
      fail("member index out of range");
  }
  {
    std::vector<int> cols(chain.freeing);
    cols.push_back(chain.target.c);
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
      fail("freeing colours (plus target colour) are not distinct");
  }
  for (int i = 1; i < l; ++i)
    if (chain.freeing[i] != chain.transfers[i - 1].c)
      fail("freeing colour does not match the incoming transfer");
  if (fam.members[chain.members[0]].has_colour(chain.freeing[0]))
    fail("first freeing colour appears in S_0");
  for (int i = 1; i < l; ++i)
    if (!fam.members[chain.members[i]].contains(chain.transfers[i - 1]))
      fail("transfer is not an element of its member");
  for (int id : chain.members)
    if (fam.members[id].contains(chain.target)) fail("target lies inside the member sequence");

  const UsedSet used = used_set(fam, inst.n());
  for (int i = 0; i < l; ++i) {
    if (!inst.in_class(chain.witnesses[i], chain.freeing[i])) fail("witness outside its class");
    if (used.contains(chain.witnesses[i], chain.freeing[i])) fail("witness already used by the family");
  }

  // per-link addability (the witness form of the definition)
  for (int i = 0; i < l; ++i) {
    Ris base = fam.members[chain.members[i]];
    if (i > 0) base.remove_colour(chain.transfers[i - 1].c);
    const Coloured next = i + 1 < l ? chain.transfers[i] : chain.target;
    if (!base.has_colour(next.c) || base.element_of_colour(next.c) != chain.removed[i])
      fail("removed element mismatch at step " + std::to_string(i));
    base.remove_colour(next.c);
    base.add({chain.witnesses[i], chain.freeing[i]});
    base.add(next);
    if (!valid_ris(inst, base)) fail("link " + std::to_string(i) + " does not form an RIS");
  }
}

std::vector<QEntry> initial_Q(const Instance& inst, const Family& fam, int s0) {
  const Ris& base = fam.members[s0];
  if (base.size() == inst.n())
    throw contract_error("initial_Q: member is already a transversal basis");
  const UsedSet used = used_set(fam, inst.n());
  std::map<Coloured, CascadeChain> best;
  const auto missing = base.missing_colours();
  const auto per_colour = witness_addable_batch(inst, used, base, missing);
  for (std::size_t mi = 0; mi < missing.size(); ++mi) {
    const int c0 = missing[mi];
    for (const AddabilityCertificate& cert : per_colour[mi]) {
      CascadeChain chain;
      chain.members = {s0};
      chain.freeing = {c0};
      chain.witnesses = {cert.witness};
      chain.removed = {cert.removed.x};
      chain.target = cert.target;
      chain.family_version = fam.version;
      auto it = best.find(cert.target);
      if (it == best.end() || chain_less(chain, it->second)) best[cert.target] = std::move(chain);
    }
  }
  std::vector<QEntry> out;
  out.reserve(best.size());
  for (auto& [elem, chain] : best) out.push_back({elem, std::move(chain)});
  return out;
}

int choose_next(const Family& fam, std::span<const int> used, std::span<const QEntry> q) {
  const int f = static_cast<int>(fam.members.size());
  std::vector<bool> is_used(f, false);
  for (int id : used) is_used[id] = true;
  std::vector<int> count(f, 0);
  for (const QEntry& entry : q) {
    bool housed = false;
    for (int i = 0; i < f && !housed; ++i) {
      if (is_used[i]) continue;
      if (fam.members[i].contains(entry.elem)) {
        ++count[i];
        housed = true;
      }
    }
    if (!housed)
      throw contract_error("choose_next: a Q element lies outside the remaining members; "
                           "the caller should have augmented");
  }
  int best = -1;
  for (int i = 0; i < f; ++i) {
    if (is_used[i]) continue;
    if (best < 0 || count[i] > count[best]) best = i;
  }
  if (best < 0) throw contract_error("choose_next: no members remain");
  const long l = static_cast<long>(used.size());
  if (static_cast<long>(count[best]) * (f - l) < static_cast<long>(q.size()))
    throw theorem_violation("choose_next: pigeonhole bound violated");
  return best;
}

ExtendResult extend_Q(const Instance& inst, const Family& fam, std::span<const int> members_seq,
                      std::span<const QEntry> q) {
  ExtendResult res;
  const int n = inst.n();
  const int f = static_cast<int>(fam.members.size());
  const int l = static_cast<int>(members_seq.size()) - 1;  // index of the new member
  const int s_l = members_seq.back();
  const Ris& member = fam.members[s_l];
  const UsedSet used = used_set(fam, n);

  std::vector<const QEntry*> inside;
  for (const QEntry& entry : q)
    if (member.contains(entry.elem)) inside.push_back(&entry);

  // witness injections for the new member, one per colour, built on demand
  std::vector<std::vector<std::pair<Coloured, ElementId>>> injections(n);
  std::vector<bool> injection_ready(n, false);
  auto phi = [&](int colour, Coloured element) -> ElementId {
    if (!injection_ready[colour]) {
      injections[colour] = build_witness_injection(inst, member, colour);
      injection_ready[colour] = true;
    }
    for (const auto& [from, to] : injections[colour])
      if (from == element) return to;
    throw theorem_violation("witness injection misses a member element");
  };

  std::map<Coloured, CascadeChain> best;
  for (const QEntry* entry : inside) {
    const Coloured freed = entry->elem;
    Ris stripped = member;
    stripped.remove_colour(freed.c);

    std::vector<Coloured> in_flight;
    for (int i = 0; i < entry->chain.length(); ++i)
      in_flight.push_back({entry->chain.witnesses[i], entry->chain.freeing[i]});

    if (auto free = find_free_addable(inst, used, stripped, freed.c, in_flight)) {
      CascadeTail tail;
      tail.chain = entry->chain;
      tail.tail_member = s_l;
      tail.tail_cert = *free;
      res.augment = std::move(tail);
      return res;
    }

    const auto swappables = swappable_colours(inst, used, stripped, freed.c);
    const int bound = n - static_cast<int>(used.slice(freed.c).size());
    if (static_cast<int>(swappables.size()) < bound)
      throw theorem_violation("extend_Q: swappable colour count fell below the many-good bound");

    for (const SwappableColour& sc : swappables) {
      if (std::find(entry->chain.freeing.begin(), entry->chain.freeing.end(), sc.colour) !=
          entry->chain.freeing.end())
        continue;
      const ElementId image = phi(sc.colour, freed);
      const Coloured candidate{image, sc.colour};
      bool inside_seq = false;
      for (int id : members_seq)
        if (fam.members[id].contains(candidate)) inside_seq = true;
      if (inside_seq) continue;

      CascadeChain chain = entry->chain;
      chain.members.push_back(s_l);
      chain.freeing.push_back(freed.c);
      chain.transfers.push_back(freed);
      chain.witnesses.push_back(sc.witness);
      chain.removed.push_back(sc.removed.x);
      chain.target = candidate;
      auto it = best.find(candidate);
      if (it == best.end() || chain_less(chain, it->second)) best[candidate] = std::move(chain);
    }
  }

  res.next.reserve(best.size());
  for (auto& [elem, chain] : best) res.next.push_back({elem, std::move(chain)});

  const long rhs = static_cast<long>(inside.size()) * (n - f - l) - static_cast<long>(l + 1) * n;
  if (rhs > 0 && static_cast<long>(res.next.size()) < rhs)
    throw theorem_violation("extend_Q: growth bound violated (" +
                            std::to_string(res.next.size()) + " < " + std::to_string(rhs) + ")");
  return res;
}

Family execute_cascade(const Instance& inst, const Family& fam, const CascadeChain& chain,
                       std::optional<Coloured> final_addition) {
  validate_chain(inst, fam, chain);
  const int l = chain.length();
  Family out = fam;
  out.version = fam.version + 1;

  for (int i = 0; i < l; ++i) {
    Ris& s = out.members[chain.members[i]];
    if (i > 0) s.remove_colour(chain.transfers[i - 1].c);  // transfer out
    s.remove_colour(chain.removed_colour(i));              // swap out
    s.add({chain.witnesses[i], chain.freeing[i]});         // swap in
    if (i + 1 < l) s.add(chain.transfers[i]);              // transfer in
  }

  if (volume(out) != volume(fam))
    throw theorem_violation("execute_cascade: volume changed by the rewrite");
  validate_family(inst, out);
  {
    Ris last = out.members[chain.members.back()];
    last.add(chain.target);
    if (!valid_ris(inst, last))
      throw theorem_violation("execute_cascade: last member cannot absorb the target");
    if (!is_disjoint_family(out, inst.n()))
      throw theorem_violation("execute_cascade: rewrite broke disjointness");
  }

  if (final_addition) {
    if (!(*final_addition == chain.target))
      throw contract_error("execute_cascade: final addition must be the chain target");
    if (used_set(out, inst.n()).contains(chain.target))
      throw stale_certificate("execute_cascade: target is no longer outside F");
    out.members[chain.members.back()].add(chain.target);
    validate_family(inst, out);
  }
  return out;
}

namespace {

Family apply_direct(const Instance& inst, const Family& fam, const DirectAdd& action) {
  const UsedSet used = used_set(fam, inst.n());
  const Ris& base = fam.members[action.member];
  if (!certificate_valid(inst, used, base, action.cert))
    throw stale_certificate("direct add: certificate no longer valid");
  if (used.contains(action.cert.target))
    throw stale_certificate("direct add: target is no longer outside F");
  Family out = fam;
  out.version = fam.version + 1;
  out.members[action.member] = apply_certificate(base, action.cert);
  validate_family(inst, out);
  if (volume(out) != volume(fam) + 1)
    throw theorem_violation("direct add: volume did not grow by one");
  return out;
}

Family apply_tail(const Instance& inst, const Family& fam, const CascadeTail& action) {
  Family out = execute_cascade(inst, fam, action.chain, std::nullopt);
  const Coloured target = action.chain.target;
  Ris& tail = out.members[action.tail_member];
  if (!tail.contains(target))
    throw stale_certificate("cascade tail: tail member does not hold the target");
  tail.remove_colour(target.c);
  out.members[action.chain.members.back()].add(target);

  const UsedSet now = used_set(out, inst.n());
  if (!certificate_valid(inst, now, tail, action.tail_cert))
    throw stale_certificate("cascade tail: tail certificate no longer valid");
  if (now.contains(action.tail_cert.target))
    throw stale_certificate("cascade tail: tail target is no longer outside F");
  out.members[action.tail_member] = apply_certificate(tail, action.tail_cert);
  validate_family(inst, out);
  if (volume(out) != volume(fam) + 1)
    throw theorem_violation("cascade tail: volume did not grow by one");
  return out;
}

}  // namespace

Family apply_action(const Instance& inst, const Family& fam, const VolumeAction& action) {
  if (const auto* direct = std::get_if<DirectAdd>(&action)) return apply_direct(inst, fam, *direct);
  if (const auto* free = std::get_if<CascadeFree>(&action)) {
    Family out = execute_cascade(inst, fam, free->chain, free->chain.target);
    if (volume(out) != volume(fam) + 1)
      throw theorem_violation("cascade: volume did not grow by one");
    return out;
  }
  return apply_tail(inst, fam, std::get<CascadeTail>(action));
}

std::optional<VolumeAction> cascade_search(const Instance& inst, const Family& fam, int s0,
                                           std::optional<int> force_s1, int l_max,
                                           std::vector<CascadeTraceRecord>* trace) {
  const int f = static_cast<int>(fam.members.size());
  const int cap = std::min(l_max, f);
  if (fam.members[s0].size() == inst.n() || fam.members[s0].empty()) return std::nullopt;
  const UsedSet used_elems = used_set(fam, inst.n());

  std::vector<QEntry> q = initial_Q(inst, fam, s0);
  std::vector<int> used{s0};
  for (int level = 1;; ++level) {
    if (q.empty()) {
      if (trace) trace->push_back({level, 0, -1, "exhausted"});
      return std::nullopt;
    }
    for (const QEntry& entry : q) {
      if (!used_elems.contains(entry.elem)) {
        if (trace) trace->push_back({level, static_cast<int>(q.size()), -1, "free-target"});
        return CascadeFree{entry.chain};
      }
    }
    if (static_cast<int>(used.size()) >= cap) {
      if (trace) trace->push_back({level, static_cast<int>(q.size()), -1, "length-cap"});
      return std::nullopt;
    }
    int next;
    if (level == 1 && force_s1 && *force_s1 != s0) {
      next = *force_s1;
    } else {
      next = choose_next(fam, used, q);
    }
    std::vector<int> seq = used;
    seq.push_back(next);
    ExtendResult res = extend_Q(inst, fam, seq, q);
    if (trace)
      trace->push_back({level, static_cast<int>(q.size()), next,
                        res.augment ? "augment" : "extend"});
    if (res.augment) return res.augment;
    q = std::move(res.next);
    used.push_back(next);
  }
}

}  // namespace rainbow
