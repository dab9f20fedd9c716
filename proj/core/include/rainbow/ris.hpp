#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rainbow/matroid.hpp"

namespace rainbow {

/// An element of the coloured universe U: matroid element x drawn from
/// colour class c. Two copies of the same matroid element in different
/// classes are distinct members of U. Ordering is by element, then colour.
struct Coloured {
  ElementId x = -1;
  int c = -1;
  auto operator<=>(const Coloured&) const = default;
};

/// A rank-n matroid together with n colour classes, each a basis.
/// Validated at construction; immutable afterwards.
class Instance {
 public:
  Instance(Matroid matroid, std::vector<std::vector<ElementId>> bases);

  const Matroid& matroid() const { return matroid_; }
  int n() const { return n_; }
  std::span<const ElementId> basis(int c) const;
  /// The same class in ascending element order (for deterministic scans).
  std::span<const ElementId> sorted_basis(int c) const;
  bool in_class(ElementId x, int c) const;

 private:
  Matroid matroid_;
  int n_;
  std::vector<std::vector<ElementId>> bases_;
  std::vector<std::vector<ElementId>> sorted_bases_;
  std::vector<std::vector<bool>> member_;  // member_[c][x]
};

/// Rainbow independent set: at most one element per colour, all matroid
/// elements distinct, projection independent. The structural invariants are
/// maintained by the mutators only partially (colour uniqueness); element
/// distinctness and independence are the caller's responsibility and are
/// checked by valid_ris().
class Ris {
 public:
  Ris() = default;
  explicit Ris(int n) : by_colour_(n, -1) {}

  int colour_count() const { return static_cast<int>(by_colour_.size()); }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool has_colour(int c) const { return by_colour_[c] >= 0; }
  ElementId element_of_colour(int c) const { return by_colour_[c]; }
  bool contains(Coloured e) const { return by_colour_[e.c] == e.x; }
  bool uses_element(ElementId x) const;

  void add(Coloured e);            // pre: colour free
  void remove_colour(int c);       // pre: colour present
  void replace(int c, ElementId x) {
    remove_colour(c);
    add({x, c});
  }

  /// Elements in colour-ascending order.
  std::vector<Coloured> elements() const;
  /// Projection to matroid elements, ascending.
  std::vector<ElementId> project() const;
  /// Colours of 1..n absent from the set, ascending (0-based).
  std::vector<int> missing_colours() const;

  bool operator==(const Ris&) const = default;

 private:
  std::vector<ElementId> by_colour_;  // -1 = colour absent
  int size_ = 0;
};

/// The maintained collection of f disjoint RISs. A value type: every
/// transformation produces a new family with a bumped version, so cascade
/// certificates can detect staleness.
struct Family {
  std::vector<Ris> members;
  std::uint64_t version = 0;

  bool operator==(const Family& o) const { return members == o.members; }
};

Family make_empty_family(int n, int f);

/// F with per-colour slices F_c, built from a family snapshot.
class UsedSet {
 public:
  UsedSet(int n) : per_colour_(n), total_(0) {}

  bool contains(ElementId x, int c) const;
  bool contains(Coloured e) const { return contains(e.x, e.c); }
  std::span<const ElementId> slice(int c) const { return per_colour_[c]; }  // F_c, ascending
  int size() const { return total_; }

  void insert(Coloured e);

 private:
  std::vector<std::vector<ElementId>> per_colour_;
  int total_;
};

/// All coloured elements (x, c) with x in B_c, sorted.
std::vector<Coloured> build_universe(const Instance& inst);

/// Matroid elements appearing in a raw coloured set, deduplicated, ascending.
std::vector<ElementId> project(std::span<const Coloured> set);

/// Checks the three RIS invariants for a raw coloured set. Throws
/// input_error if some pair is not a member of U.
bool is_ris(const Instance& inst, std::span<const Coloured> set);

/// Checks a Ris value against an instance (membership, distinct elements,
/// independent projection).
bool valid_ris(const Instance& inst, const Ris& s);

int volume(const Family& fam);

/// Union of the members. Throws contract_error if two members share an
/// element of U.
UsedSet used_set(const Family& fam, int n);

std::vector<int> missing_colours(const Ris& s, int n);

bool is_disjoint_family(const Family& fam, int n);

/// Regression hook: every member a valid RIS and the family disjoint.
/// Throws theorem_violation naming the first broken member otherwise.
void validate_family(const Instance& inst, const Family& fam);

}  // namespace rainbow
