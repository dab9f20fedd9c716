#include "rainbow/ris.hpp"

#include <algorithm>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

Instance::Instance(Matroid matroid, std::vector<std::vector<ElementId>> bases)
    : matroid_(std::move(matroid)), n_(matroid_.rank()), bases_(std::move(bases)) {
  if (static_cast<int>(bases_.size()) != n_)
    throw input_error("instance: expected " + std::to_string(n_) + " colour classes (matroid rank), got " +
                      std::to_string(bases_.size()));
  member_.assign(n_, std::vector<bool>(matroid_.ground_size(), false));
  for (int c = 0; c < n_; ++c) {
    const auto& b = bases_[c];
    if (static_cast<int>(b.size()) != n_)
      throw input_error("bases[" + std::to_string(c) + "]: expected " + std::to_string(n_) +
                        " elements, got " + std::to_string(b.size()));
    if (!matroid_.is_independent(b))
      throw input_error("bases[" + std::to_string(c) + "]: not an independent set");
    for (ElementId x : b) member_[c][x] = true;
  }
  sorted_bases_ = bases_;
  for (auto& b : sorted_bases_) std::sort(b.begin(), b.end());
}

std::span<const ElementId> Instance::basis(int c) const {
  if (c < 0 || c >= n_) throw input_error("colour " + std::to_string(c) + " out of range");
  return bases_[c];
}

std::span<const ElementId> Instance::sorted_basis(int c) const {
  if (c < 0 || c >= n_) throw input_error("colour " + std::to_string(c) + " out of range");
  return sorted_bases_[c];
}

bool Instance::in_class(ElementId x, int c) const {
  if (c < 0 || c >= n_) return false;
  if (x < 0 || x >= matroid_.ground_size()) return false;
  return member_[c][x];
}

bool Ris::uses_element(ElementId x) const {
  for (ElementId e : by_colour_)
    if (e == x) return true;
  return false;
}

void Ris::add(Coloured e) {
  if (by_colour_[e.c] >= 0) throw contract_error("ris: colour already present");
  by_colour_[e.c] = e.x;
  ++size_;
}

void Ris::remove_colour(int c) {
  if (by_colour_[c] < 0) throw contract_error("ris: colour not present");
  by_colour_[c] = -1;
  --size_;
}

std::vector<Coloured> Ris::elements() const {
  std::vector<Coloured> out;
  out.reserve(size_);
  for (int c = 0; c < colour_count(); ++c)
    if (by_colour_[c] >= 0) out.push_back({by_colour_[c], c});
  return out;
}

std::vector<ElementId> Ris::project() const {
  std::vector<ElementId> out;
  out.reserve(size_);
  for (ElementId x : by_colour_)
    if (x >= 0) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Ris::missing_colours() const {
  std::vector<int> out;
  for (int c = 0; c < colour_count(); ++c)
    if (by_colour_[c] < 0) out.push_back(c);
  return out;
}

Family make_empty_family(int n, int f) {
  Family fam;
  fam.members.assign(f, Ris(n));
  return fam;
}

bool UsedSet::contains(ElementId x, int c) const {
  if (c < 0 || c >= static_cast<int>(per_colour_.size())) return false;
  const auto& v = per_colour_[c];
  return std::binary_search(v.begin(), v.end(), x);
}

void UsedSet::insert(Coloured e) {
  auto& v = per_colour_[e.c];
  auto it = std::lower_bound(v.begin(), v.end(), e.x);
  if (it != v.end() && *it == e.x)
    throw contract_error("used set: duplicate coloured element; family is not disjoint");
  v.insert(it, e.x);
  ++total_;
}

std::vector<Coloured> build_universe(const Instance& inst) {
  std::vector<Coloured> out;
  out.reserve(static_cast<std::size_t>(inst.n()) * inst.n());
  for (int c = 0; c < inst.n(); ++c)
    for (ElementId x : inst.basis(c)) out.push_back({x, c});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementId> project(std::span<const Coloured> set) {
  std::vector<ElementId> out;
  out.reserve(set.size());
  for (const Coloured& e : set) out.push_back(e.x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_ris(const Instance& inst, std::span<const Coloured> set) {
  for (const Coloured& e : set)
    if (!inst.in_class(e.x, e.c))
      throw input_error("coloured element (" + std::to_string(e.x) + "," + std::to_string(e.c) +
                        ") is not a member of the universe");
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

bool valid_ris(const Instance& inst, const Ris& s) {
  if (s.colour_count() != inst.n()) return false;
  auto elems = s.elements();
  return is_ris(inst, elems);
}

int volume(const Family& fam) {
  int v = 0;
  for (const Ris& s : fam.members) v += s.size();
  return v;
}

UsedSet used_set(const Family& fam, int n) {
  UsedSet f(n);
  for (const Ris& s : fam.members)
    for (const Coloured& e : s.elements()) f.insert(e);
  return f;
}

std::vector<int> missing_colours(const Ris& s, int n) {
  (void)n;
  return s.missing_colours();
}

bool is_disjoint_family(const Family& fam, int n) {
  UsedSet f(n);
  for (const Ris& s : fam.members)
    for (const Coloured& e : s.elements()) {
      if (f.contains(e)) return false;
      f.insert(e);
    }
  return true;
}

void validate_family(const Instance& inst, const Family& fam) {
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    if (!valid_ris(inst, fam.members[i]))
      throw theorem_violation("family member " + std::to_string(i) + " is not a valid RIS");
  if (!is_disjoint_family(fam, inst.n()))
    throw theorem_violation("family members are not pairwise disjoint");
}

}  // namespace rainbow
