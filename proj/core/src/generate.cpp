#include "rainbow/generate.hpp"

#include <algorithm>

#include "rainbow/errors.hpp"

namespace rainbow {

std::string kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::uniform_identical: return "uniform-identical";
    case InstanceKind::linear_random: return "linear-random";
    case InstanceKind::graphic_random: return "graphic-random";
  }
  return "?";
}

std::optional<InstanceKind> kind_from_name(const std::string& name) {
  if (name == "uniform-identical") return InstanceKind::uniform_identical;
  if (name == "linear-random") return InstanceKind::linear_random;
  if (name == "graphic-random") return InstanceKind::graphic_random;
  return std::nullopt;
}

namespace {

constexpr int kRetryCap = 32;  // rank-deficient draws are regenerated up to this

std::vector<ElementId> greedy_basis(const Matroid& m, Rng& rng) {
  const int n = m.rank();
  auto order = rng.permutation(m.ground_size());
  IndependenceProbe probe = m.probe();
  std::vector<ElementId> out;
  for (int x : order) {
    if (probe.try_add(x)) {
      out.push_back(x);
      if (static_cast<int>(out.size()) == n) break;
    }
  }
  if (static_cast<int>(out.size()) != n)
    throw theorem_violation("greedy basis extraction fell short of the rank");
  return out;
}

Instance generate_linear(int n, Rng& rng, std::uint32_t p) {
  const int ground = 2 * n;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<std::vector<std::uint32_t>> cols(ground, std::vector<std::uint32_t>(n));
    for (auto& col : cols) {
      bool nonzero = false;
      for (auto& v : col) {
        v = static_cast<std::uint32_t>(rng.below(p));
        nonzero |= v != 0;
      }
      if (!nonzero) col[0] = 1;
    }
    Matroid m = Matroid::linear(p, std::move(cols));
    if (m.rank() != n) continue;
    std::vector<std::vector<ElementId>> bases;
    bases.reserve(n);
    for (int c = 0; c < n; ++c) bases.push_back(greedy_basis(m, rng));
    return Instance(std::move(m), std::move(bases));
  }
  throw input_error("generate_instance: could not draw a rank-" + std::to_string(n) +
                    " linear matroid after " + std::to_string(kRetryCap) + " attempts");
}

Instance generate_graphic(int n, Rng& rng) {
  const int vertices = n + 1;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < vertices; ++v)
      edges.push_back({v, static_cast<int>(rng.below(v))});  // random spanning tree
    for (int e = 0; e < 2 * n; ++e) {
      int u = static_cast<int>(rng.below(vertices));
      int v = static_cast<int>(rng.below(vertices - 1));
      if (v >= u) ++v;
      edges.push_back({u, v});
    }
    rng.shuffle(edges);
    Matroid m = Matroid::graphic(vertices, std::move(edges));
    if (m.rank() != n) continue;
    std::vector<std::vector<ElementId>> bases;
    bases.reserve(n);
    for (int c = 0; c < n; ++c) bases.push_back(greedy_basis(m, rng));
    return Instance(std::move(m), std::move(bases));
  }
  throw input_error("generate_instance: could not draw a rank-" + std::to_string(n) +
                    " graphic matroid after " + std::to_string(kRetryCap) + " attempts");
}

}  // namespace

Instance generate_instance(InstanceKind kind, int n, std::uint64_t seed, std::uint32_t p) {
  if (n < 1) throw input_error("generate_instance: n must be positive");
  Rng rng(seed);
  switch (kind) {
    case InstanceKind::uniform_identical: {
      std::vector<ElementId> ground(n);
      for (int i = 0; i < n; ++i) ground[i] = i;
      return Instance(Matroid::uniform(n, n), std::vector<std::vector<ElementId>>(n, ground));
    }
    case InstanceKind::linear_random:
      return generate_linear(n, rng, p);
    case InstanceKind::graphic_random:
      return generate_graphic(n, rng);
  }
  throw input_error("generate_instance: unknown kind");
}

Family random_family(const Instance& inst, Rng& rng, int f, int target_volume) {
  const int n = inst.n();
  Family fam = make_empty_family(n, f);
  UsedSet used(n);
  int vol = 0;
  const int budget = 30 * std::max(1, target_volume);
  for (int attempt = 0; attempt < budget && vol < target_volume; ++attempt) {
    const int i = static_cast<int>(rng.below(f));
    Ris& s = fam.members[i];
    const auto missing = s.missing_colours();
    if (missing.empty()) continue;
    const int c = missing[rng.below(missing.size())];
    auto cls = inst.sorted_basis(c);
    const ElementId x = cls[rng.below(cls.size())];
    if (used.contains(x, c)) continue;
    if (s.uses_element(x)) continue;
    auto proj = s.project();
    proj.push_back(x);
    if (!inst.matroid().is_independent(proj)) continue;
    s.add({x, c});
    used.insert({x, c});
    ++vol;
  }
  return fam;
}

}  // namespace rainbow
