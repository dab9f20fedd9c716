#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rainbow {

using ElementId = int;

class Matroid;

/// Incremental independence checker for a growing set P: can_add(x) answers
/// whether x is independent of P, i.e. x not in P and P + x independent.
/// Semantically equivalent to querying Matroid::is_independent(P + x); the
/// per-backend state (rank counter, union-find forest, reduced columns) keeps
/// the query cheap inside search loops. Cheap to copy.
class IndependenceProbe {
 public:
  bool can_add(ElementId x) const;
  void add(ElementId x);  // pre: can_add(x)
  bool try_add(ElementId x) {
    if (!can_add(x)) return false;
    add(x);
    return true;
  }
  int size() const { return count_; }
  bool in_set(ElementId x) const { return in_set_[x]; }

  /// Span classes of addable candidates modulo the current set P: for x, y
  /// both addable, x remains addable after add(y) iff their class ids
  /// differ. Non-addable candidates get -1.
  std::vector<std::int64_t> addable_classes(std::span<const ElementId> candidates) const;

  /// Support of the unique dependence of y on P: the members x of P such
  /// that P - x + y is independent. Requires !can_add(y). For y already in
  /// P this is {y}. Ascending.
  std::vector<ElementId> fundamental_circuit(ElementId y) const;

 private:
  friend class Matroid;
  explicit IndependenceProbe(const Matroid& m);
  std::vector<std::uint32_t> reduce(ElementId x, std::vector<std::uint32_t>* coefs) const;

  std::shared_ptr<const void> impl_;  // keeps backend data alive
  int count_ = 0;
  std::vector<bool> in_set_;           // membership in P
  std::vector<ElementId> members_;     // P in insertion order
  // graphic backend
  std::vector<int> dsu_;
  // linear backend: reduced columns in echelon form with pivot rows, plus
  // each reduced column's expression in terms of the added originals
  std::vector<std::vector<std::uint32_t>> echelon_;
  std::vector<int> pivots_;
  std::vector<std::vector<std::uint32_t>> combos_;
};

/// A matroid given by its independence oracle. Three backends:
/// uniform (independent iff |s| <= r), graphic (edge sets without cycles),
/// linear (columns over GF(p), p prime). Values are immutable after
/// construction and safe to share across threads.
class Matroid {
 public:
  enum class Backend { uniform, graphic, linear };

  static Matroid uniform(int ground_size, int rank);
  static Matroid graphic(int vertex_count, std::vector<std::pair<int, int>> edges);
  static Matroid linear(std::uint32_t prime, std::vector<std::vector<std::uint32_t>> columns);

  Backend backend() const;
  int ground_size() const;
  /// Rank of the full ground set, computed greedily through the oracle.
  int rank() const;

  /// True iff the set is independent. Throws input_error on out-of-range
  /// ids; a repeated id makes the set dependent.
  bool is_independent(std::span<const ElementId> set) const;
  bool is_independent(std::initializer_list<ElementId> set) const {
    return is_independent(std::span<const ElementId>(set.begin(), set.size()));
  }

  /// Size of a maximal independent subset, by greedy oracle calls over the
  /// elements in ascending order. Order of the input does not matter.
  int rank_of(std::span<const ElementId> set) const;
  int rank_of(std::initializer_list<ElementId> set) const {
    return rank_of(std::span<const ElementId>(set.begin(), set.size()));
  }

  /// Smallest x in a \ b with b + x independent. Preconditions: a and b
  /// independent, |a| > |b| (contract_error otherwise). A nullopt return is
  /// impossible for a real matroid and signals an inconsistent oracle.
  std::optional<ElementId> augment(std::span<const ElementId> a,
                                   std::span<const ElementId> b) const;

  /// Extends `base` to an independent set of size k using elements of
  /// `pool`, greedily in ascending order. Throws contract_error if no
  /// extension of size k exists.
  std::vector<ElementId> extend_to_size(std::span<const ElementId> base,
                                        std::span<const ElementId> pool, int k) const;

  /// Empty probe; grow it with add()/try_add().
  IndependenceProbe probe() const { return IndependenceProbe(*this); }
  /// Probe preloaded with an independent base set (contract_error if the
  /// base is dependent).
  IndependenceProbe probe(std::span<const ElementId> base) const;

  // accessors used by serialization
  int uniform_rank() const;
  int graphic_vertices() const;
  const std::vector<std::pair<int, int>>& graphic_edges() const;
  std::uint32_t linear_prime() const;
  const std::vector<std::vector<std::uint32_t>>& linear_columns() const;

 private:
  struct Impl;
  explicit Matroid(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void check_ids(std::span<const ElementId> set) const;
  int rank_of_all() const;

  friend class IndependenceProbe;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace rainbow
