#include "rainbow/swaps.hpp"

#include <algorithm>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

namespace {

bool used_or_extra(const UsedSet& used, Coloured e, std::span<const Coloured> extra) {
  if (used.contains(e)) return true;
  return std::find(extra.begin(), extra.end(), e) != extra.end();
}

std::span<const ElementId> sorted_class(const Instance& inst, int c) {
  return inst.sorted_basis(c);
}

void require_missing(const Ris& s, int b) {
  if (b < 0 || b >= s.colour_count() || s.has_colour(b))
    throw contract_error("colour b must be missing from S");
}

// Per-member analysis shared across witness colours b. A target x of a
// colour c held by S is swap-reachable in two shapes:
//   kind A: x independent of pi(S) entirely;
//   kind B: x dependent on pi(S), with the colour-c element x' inside its
//           fundamental circuit (so x is independent of pi(S) - x').
// A witness y of colour b is either universal (independent of pi(S); it can
// replace any element, and pairs with a kind-A target only when their span
// classes modulo pi(S) - x' differ) or circuit-bound (dependent; it can only
// replace the elements of its own circuit, and then exactly the kind-A
// targets qualify, because pi(S) - x' + y spans the same set as pi(S)).
struct TargetInfo {
  std::vector<ElementId> kind_a;
  std::vector<ElementId> kind_b;
};

struct MemberContext {
  const Ris* s = nullptr;
  std::vector<ElementId> proj;
  IndependenceProbe probe;  // on pi(S)
  std::vector<int> colour_of;  // element -> colour within S, -1 elsewhere
  std::vector<TargetInfo> targets;  // indexed by colour; empty for absent colours

  MemberContext(const Instance& inst, const Ris& ris, const UsedSet* free_filter,
                std::span<const Coloured> extra)
      : s(&ris), proj(ris.project()), probe(inst.matroid().probe(proj)),
        colour_of(inst.matroid().ground_size(), -1), targets(inst.n()) {
    for (const Coloured& e : ris.elements()) colour_of[e.x] = e.c;
    for (int c = 0; c < inst.n(); ++c) {
      if (!ris.has_colour(c)) continue;
      const ElementId pivot = ris.element_of_colour(c);
      TargetInfo& info = targets[c];
      for (ElementId x : sorted_class(inst, c)) {
        if (x == pivot) continue;
        if (free_filter && used_or_extra(*free_filter, {x, c}, extra)) continue;
        if (probe.can_add(x)) {
          info.kind_a.push_back(x);
        } else {
          auto circuit = probe.fundamental_circuit(x);
          if (std::binary_search(circuit.begin(), circuit.end(), pivot))
            info.kind_b.push_back(x);
        }
      }
    }
  }
};

// Witness supply for one colour b against a member context.
struct WitnessSupply {
  std::vector<ElementId> universal;     // independent of pi(S), ascending
  std::vector<ElementId> circuit_wit;   // per colour: smallest dependent witness
                                        // whose circuit covers that colour
  bool any = false;
};

WitnessSupply witness_supply(const Instance& inst, const MemberContext& ctx, const UsedSet& used,
                             int b, std::span<const Coloured> extra) {
  WitnessSupply supply;
  supply.circuit_wit.assign(inst.n(), -1);
  for (ElementId y : sorted_class(inst, b)) {
    if (used_or_extra(used, {y, b}, extra)) continue;
    if (ctx.probe.can_add(y)) {
      supply.universal.push_back(y);
      supply.any = true;
    } else {
      for (ElementId member : ctx.probe.fundamental_circuit(y)) {
        const int c = ctx.colour_of[member];
        if (c >= 0 && supply.circuit_wit[c] < 0) {
          supply.circuit_wit[c] = y;
          supply.any = true;
        }
      }
    }
  }
  return supply;
}

std::vector<AddabilityCertificate> witness_addable_ctx(const Instance& inst,
                                                       const MemberContext& ctx,
                                                       const UsedSet& used, int b,
                                                       std::span<const Coloured> extra) {
  std::vector<AddabilityCertificate> out;
  require_missing(*ctx.s, b);
  const WitnessSupply supply = witness_supply(inst, ctx, used, b, extra);
  if (!supply.any) return out;

  auto emit = [&](ElementId x, int c, ElementId pivot, ElementId witness) {
    AddabilityCertificate cert;
    cert.target = {x, c};
    cert.colour_b = b;
    cert.kind = AddabilityCertificate::Kind::swap;
    cert.removed = {pivot, c};
    cert.witness = witness;
    out.push_back(cert);
  };

  for (int c = 0; c < inst.n(); ++c) {
    if (!ctx.s->has_colour(c)) continue;
    const TargetInfo& info = ctx.targets[c];
    const ElementId pivot = ctx.s->element_of_colour(c);
    const ElementId circuit_y = supply.circuit_wit[c];

    if (supply.universal.empty()) {
      if (circuit_y < 0) continue;
      for (ElementId x : info.kind_a) emit(x, c, pivot, circuit_y);
      continue;
    }

    // universal witnesses are in play: kind-A pairing needs span classes
    // modulo pi(S) - pivot
    std::vector<ElementId> base;
    base.reserve(ctx.proj.size() - 1);
    for (ElementId e : ctx.proj)
      if (e != pivot) base.push_back(e);
    IndependenceProbe base_probe = inst.matroid().probe(base);

    std::vector<ElementId> cands = info.kind_a;
    cands.insert(cands.end(), supply.universal.begin(), supply.universal.end());
    const auto classes = base_probe.addable_classes(cands);
    const std::size_t na = info.kind_a.size();

    ElementId u1 = -1, u2 = -1;
    std::int64_t u1_cls = -1;
    for (std::size_t j = 0; j < supply.universal.size(); ++j) {
      const std::int64_t cls = classes[na + j];
      if (cls < 0) continue;  // universal witness parallel to nothing? cannot happen
      if (u1 < 0) {
        u1 = supply.universal[j];
        u1_cls = cls;
      } else if (cls != u1_cls) {
        u2 = supply.universal[j];
        break;
      }
    }

    for (std::size_t i = 0; i < na; ++i) {
      const ElementId x = info.kind_a[i];
      ElementId univ = -1;
      if (u1 >= 0 && classes[i] >= 0) univ = classes[i] != u1_cls ? u1 : u2;
      ElementId witness = -1;
      if (circuit_y >= 0 && univ >= 0)
        witness = std::min(circuit_y, univ);
      else if (circuit_y >= 0)
        witness = circuit_y;
      else
        witness = univ;
      if (witness >= 0) emit(x, c, pivot, witness);
    }
    if (u1 >= 0)
      for (ElementId x : info.kind_b) emit(x, c, pivot, u1);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b2) { return a.target < b2.target; });
  return out;
}

// Direct placements: (x,c) with c missing from S and x independent of the
// projection. Sorted by target.
std::vector<AddabilityCertificate> direct_addable(const Instance& inst, const Ris& s, int b) {
  std::vector<AddabilityCertificate> out;
  auto proj = s.project();
  IndependenceProbe probe = inst.matroid().probe(proj);
  for (int c : s.missing_colours()) {
    for (ElementId x : sorted_class(inst, c)) {
      if (!probe.can_add(x)) continue;
      AddabilityCertificate cert;
      cert.target = {x, c};
      cert.colour_b = b;
      cert.kind = AddabilityCertificate::Kind::direct;
      out.push_back(cert);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b2) { return a.target < b2.target; });
  return out;
}

}  // namespace

Ris apply_certificate(const Ris& s, const AddabilityCertificate& cert) {
  Ris out = s;
  if (cert.kind == AddabilityCertificate::Kind::swap) {
    if (!out.contains(cert.removed)) throw contract_error("certificate removes an absent element");
    out.remove_colour(cert.removed.c);
    out.add({cert.witness, cert.colour_b});
  }
  out.add(cert.target);
  return out;
}

bool certificate_valid(const Instance& inst, const UsedSet& used, const Ris& s,
                       const AddabilityCertificate& cert, std::span<const Coloured> extra_used) {
  if (!inst.in_class(cert.target.x, cert.target.c)) return false;
  if (s.contains(cert.target)) return false;
  if (cert.kind == AddabilityCertificate::Kind::direct) {
    if (s.has_colour(cert.target.c)) return false;
  } else {
    if (cert.colour_b < 0 || s.has_colour(cert.colour_b)) return false;
    if (!s.contains(cert.removed)) return false;
    if (cert.removed.c != cert.target.c) return false;
    if (!inst.in_class(cert.witness, cert.colour_b)) return false;
    if (used_or_extra(used, {cert.witness, cert.colour_b}, extra_used)) return false;
  }
  Ris next = apply_certificate(s, cert);
  return valid_ris(inst, next);
}

std::vector<AddabilityCertificate> witness_addable(const Instance& inst, const UsedSet& used,
                                                   const Ris& s, int b,
                                                   std::span<const Coloured> extra_used) {
  require_missing(s, b);
  MemberContext ctx(inst, s, nullptr, extra_used);
  return witness_addable_ctx(inst, ctx, used, b, extra_used);
}

std::vector<std::vector<AddabilityCertificate>> witness_addable_batch(
    const Instance& inst, const UsedSet& used, const Ris& s, std::span<const int> bs,
    std::span<const Coloured> extra_used) {
  MemberContext ctx(inst, s, nullptr, extra_used);
  std::vector<std::vector<AddabilityCertificate>> out;
  out.reserve(bs.size());
  for (int b : bs) out.push_back(witness_addable_ctx(inst, ctx, used, b, extra_used));
  return out;
}

std::vector<AddabilityCertificate> enumerate_addable(const Instance& inst, const UsedSet& used,
                                                     const Ris& s, int b) {
  require_missing(s, b);
  std::vector<AddabilityCertificate> out = direct_addable(inst, s, b);
  std::vector<AddabilityCertificate> swaps = witness_addable(inst, used, s, b);
  // direct targets live on missing colours, swap targets on present colours;
  // the two lists never mention the same target
  out.insert(out.end(), swaps.begin(), swaps.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b2) { return a.target < b2.target; });
  return out;
}

std::vector<AddabilityCertificate> enumerate_addable(const Instance& inst, const Family& fam,
                                                     const Ris& s, int b) {
  return enumerate_addable(inst, used_set(fam, inst.n()), s, b);
}

std::optional<AddabilityCertificate> find_free_addable(const Instance& inst, const UsedSet& used,
                                                       const Ris& s, int b,
                                                       std::span<const Coloured> extra_used) {
  require_missing(s, b);
  {
    auto proj = s.project();
    IndependenceProbe probe = inst.matroid().probe(proj);
    for (int c : s.missing_colours()) {
      for (ElementId x : sorted_class(inst, c)) {
        if (used_or_extra(used, {x, c}, extra_used)) continue;
        if (!probe.can_add(x)) continue;
        AddabilityCertificate cert;
        cert.target = {x, c};
        cert.colour_b = b;
        cert.kind = AddabilityCertificate::Kind::direct;
        return cert;
      }
    }
  }
  MemberContext ctx(inst, s, &used, extra_used);  // targets restricted to free pairs
  auto swaps = witness_addable_ctx(inst, ctx, used, b, extra_used);
  if (!swaps.empty()) return swaps.front();
  return std::nullopt;
}

std::optional<AddabilityCertificate> find_free_addable(const Instance& inst, const Family& fam,
                                                       const Ris& s, int b) {
  return find_free_addable(inst, used_set(fam, inst.n()), s, b);
}

std::optional<AddabilityCertificate> find_any_free_addable(const Instance& inst,
                                                           const UsedSet& used, const Ris& s,
                                                           std::span<const Coloured> extra_used) {
  {
    auto proj = s.project();
    IndependenceProbe probe = inst.matroid().probe(proj);
    for (int c : s.missing_colours()) {
      for (ElementId x : sorted_class(inst, c)) {
        if (used_or_extra(used, {x, c}, extra_used)) continue;
        if (!probe.can_add(x)) continue;
        AddabilityCertificate cert;
        cert.target = {x, c};
        cert.colour_b = c;
        cert.kind = AddabilityCertificate::Kind::direct;
        return cert;
      }
    }
  }
  if (s.empty()) return std::nullopt;
  MemberContext ctx(inst, s, &used, extra_used);
  for (int b : s.missing_colours()) {
    auto swaps = witness_addable_ctx(inst, ctx, used, b, extra_used);
    if (!swaps.empty()) return swaps.front();
  }
  return std::nullopt;
}

std::vector<SwappableColour> swappable_colours(const Instance& inst, const UsedSet& used,
                                               const Ris& s, int b) {
  require_missing(s, b);
  const int n = inst.n();
  const auto proj = s.project();
  IndependenceProbe probe = inst.matroid().probe(proj);

  std::vector<ElementId> colour_of(inst.matroid().ground_size(), -1);
  for (const Coloured& e : s.elements()) colour_of[e.x] = e.c;

  std::vector<ElementId> witness_for(n, -1);
  for (ElementId y : sorted_class(inst, b)) {
    if (used.contains(y, b)) continue;
    if (probe.can_add(y)) {
      // y is independent of all of S: it witnesses every colour
      for (const Coloured& e : s.elements())
        if (witness_for[e.c] < 0) witness_for[e.c] = y;
    } else {
      // removing any circuit element of y frees room for y
      for (ElementId x : probe.fundamental_circuit(y)) {
        int c = colour_of[x];
        if (c >= 0 && witness_for[c] < 0) witness_for[c] = y;
      }
    }
  }

  std::vector<SwappableColour> out;
  for (int c = 0; c < n; ++c) {
    if (witness_for[c] < 0) continue;
    SwappableColour sc;
    sc.colour = c;
    sc.witness = witness_for[c];
    sc.removed = {s.element_of_colour(c), c};
    out.push_back(sc);
  }
  return out;
}

std::vector<SwappableColour> swappable_colours(const Instance& inst, const Family& fam,
                                               const Ris& s, int b) {
  return swappable_colours(inst, used_set(fam, inst.n()), s, b);
}

ManyGoodResult many_good_dichotomy(const Instance& inst, const Family& fam, const Ris& s, int b) {
  if (s.empty()) throw contract_error("many_good_dichotomy: S must be nonempty");
  require_missing(s, b);
  const UsedSet used = used_set(fam, inst.n());
  ManyGoodResult res;
  res.free_addable = find_free_addable(inst, used, s, b);
  if (res.free_addable) return res;
  res.swappables = swappable_colours(inst, used, s, b);
  const int bound = inst.n() - static_cast<int>(used.slice(b).size());
  if (static_cast<int>(res.swappables.size()) < bound)
    throw theorem_violation("many-good dichotomy: only " + std::to_string(res.swappables.size()) +
                            " swappable colours, expected at least " + std::to_string(bound));
  return res;
}

std::vector<AddabilityCertificate> addable_via_swappable(const Instance& inst, const Family& fam,
                                                         const Ris& s, int b,
                                                         const SwappableColour& sc) {
  require_missing(s, b);
  if (used_set(fam, inst.n()).contains(sc.witness, b))
    throw contract_error("addable_via_swappable: witness is no longer outside F");
  const auto proj = s.project();
  {
    IndependenceProbe probe = inst.matroid().probe(proj);
    if (probe.can_add(sc.witness))
      throw contract_error(
          "addable_via_swappable: S plus the witness is an RIS; take the free addition");
  }
  std::vector<AddabilityCertificate> out;
  IndependenceProbe probe = inst.matroid().probe(proj);
  for (ElementId x : sorted_class(inst, sc.colour)) {
    if (!probe.can_add(x)) continue;
    AddabilityCertificate cert;
    cert.target = {x, sc.colour};
    cert.colour_b = b;
    cert.kind = AddabilityCertificate::Kind::swap;
    cert.removed = sc.removed;
    cert.witness = sc.witness;
    if (!valid_ris(inst, apply_certificate(s, cert)))
      throw theorem_violation("add-if-good produced a non-RIS for element " + std::to_string(x));
    out.push_back(cert);
  }
  return out;
}

std::vector<std::pair<Coloured, ElementId>> build_witness_injection(const Instance& inst,
                                                                    const Ris& s, int b) {
  const auto left = s.elements();  // colour-ascending
  const int k = static_cast<int>(left.size());
  if (k == 0) return {};
  const auto proj = s.project();
  IndependenceProbe probe = inst.matroid().probe(proj);

  std::vector<int> left_index(inst.matroid().ground_size(), -1);
  for (int i = 0; i < k; ++i) left_index[left[i].x] = i;

  // adjacency: for each left element (x,c), the y in B_b independent of
  // pi(S) - x, in ascending y order
  std::vector<std::vector<int>> adj(k);
  const auto right = sorted_class(inst, b);
  for (int j = 0; j < static_cast<int>(right.size()); ++j) {
    ElementId y = right[j];
    if (probe.in_set(y)) {
      if (left_index[y] >= 0) adj[left_index[y]].push_back(j);
    } else if (probe.can_add(y)) {
      for (int i = 0; i < k; ++i) adj[i].push_back(j);
    } else {
      for (ElementId x : probe.fundamental_circuit(y))
        if (left_index[x] >= 0) adj[left_index[x]].push_back(j);
    }
  }

  // Kuhn's augmenting paths; left processed in colour order, candidates in
  // ascending y order
  std::vector<int> match_right(right.size(), -1), match_left(k, -1);
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
  for (int i = 0; i < k; ++i) {
    visited.assign(right.size(), false);
    if (!augment(augment, i))
      throw theorem_violation("witness injection: no perfect matching covers S (Hall failure)");
  }

  std::vector<std::pair<Coloured, ElementId>> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back({left[i], right[match_left[i]]});
  return out;
}

CountAddableResult count_addable_or_augment(const Instance& inst, const Family& fam, const Ris& s,
                                            int b) {
  require_missing(s, b);
  const UsedSet used = used_set(fam, inst.n());
  CountAddableResult res;
  res.augment = find_free_addable(inst, used, s, b);
  if (res.augment) return res;
  res.addable = enumerate_addable(inst, used, s, b);
  const int n = inst.n();
  const int f = static_cast<int>(fam.members.size());
  if (n - f > 0) {
    const long bound = static_cast<long>(n - s.size()) * (n - f);
    if (static_cast<long>(res.addable.size()) < bound)
      throw theorem_violation("1-addability: " + std::to_string(res.addable.size()) +
                              " addable elements, expected at least " + std::to_string(bound));
  }
  return res;
}

}  // namespace rainbow
