#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "rainbow/ris.hpp"

namespace rainbow {

/// Evidence that a coloured element can be placed into an RIS S that is
/// missing colour b: either directly, or after the simple swap that removes
/// the colour-matching element of S and inserts an unused witness of colour
/// b. Applying a swap certificate turns S into
/// S - removed + (witness, b) + target.
struct AddabilityCertificate {
  enum class Kind { direct, swap };

  Coloured target;
  int colour_b = -1;
  int base = -1;  // family member index when the base RIS is a member
  Kind kind = Kind::direct;
  Coloured removed{};      // swap only; the colour-c element of S
  ElementId witness = -1;  // swap only; (witness, colour_b) outside F

  bool operator==(const AddabilityCertificate&) const = default;
};

/// A colour of S whose element can be swapped out for an unused b-coloured
/// witness while keeping an RIS.
struct SwappableColour {
  int colour = -1;
  ElementId witness = -1;
  Coloured removed{};
};

/// S after applying the certificate. Does not touch the family; the caller
/// owns disjointness bookkeeping.
Ris apply_certificate(const Ris& s, const AddabilityCertificate& cert);

/// Re-checks that a certificate still proves addability against the given
/// base RIS and used set (witness freshness included; target freshness is
/// not required for addability).
bool certificate_valid(const Instance& inst, const UsedSet& used, const Ris& s,
                       const AddabilityCertificate& cert,
                       std::span<const Coloured> extra_used = {});

/// All (S,b)-addable elements of the universe, one certificate per target:
/// direct placements for the colours S misses, swap-backed placements for
/// the colours S holds (smallest witness). Sorted by target. Requires b
/// missing from S (contract_error otherwise).
std::vector<AddabilityCertificate> enumerate_addable(const Instance& inst, const UsedSet& used,
                                                     const Ris& s, int b);
std::vector<AddabilityCertificate> enumerate_addable(const Instance& inst, const Family& fam,
                                                     const Ris& s, int b);

/// Only the swap-backed certificates (targets addable *with a witness*),
/// including targets that are also directly addable through another colour.
/// This is the enumeration cascade chains are made of. `extra_used` extends
/// F when witnesses must additionally avoid in-flight cascade insertions.
std::vector<AddabilityCertificate> witness_addable(const Instance& inst, const UsedSet& used,
                                                   const Ris& s, int b,
                                                   std::span<const Coloured> extra_used = {});

/// witness_addable for several colours b at once, sharing the per-member
/// span analysis. out[i] corresponds to bs[i].
std::vector<std::vector<AddabilityCertificate>> witness_addable_batch(
    const Instance& inst, const UsedSet& used, const Ris& s, std::span<const int> bs,
    std::span<const Coloured> extra_used = {});

/// A certificate whose target lies outside F (and outside extra_used), or
/// nullopt when every addable element is already used. Direct targets are
/// preferred, then smallest swap target.
std::optional<AddabilityCertificate> find_free_addable(const Instance& inst, const UsedSet& used,
                                                       const Ris& s, int b,
                                                       std::span<const Coloured> extra_used = {});
std::optional<AddabilityCertificate> find_free_addable(const Instance& inst, const Family& fam,
                                                       const Ris& s, int b);

/// First free addable across every colour S misses: direct targets first,
/// then swap-backed ones per missing colour, sharing one span analysis.
std::optional<AddabilityCertificate> find_any_free_addable(
    const Instance& inst, const UsedSet& used, const Ris& s,
    std::span<const Coloured> extra_used = {});

/// The colours of S admitting a simple swap with an out-of-F witness of
/// colour b, each with its smallest witness. Ascending by colour.
std::vector<SwappableColour> swappable_colours(const Instance& inst, const UsedSet& used,
                                               const Ris& s, int b);
std::vector<SwappableColour> swappable_colours(const Instance& inst, const Family& fam,
                                               const Ris& s, int b);

/// Either a volume-increasing free addable exists, or S offers at least
/// n - |F_b| swappable colours. The bound is asserted (theorem_violation on
/// failure); a shorter list is an implementation bug, never valid output.
struct ManyGoodResult {
  std::optional<AddabilityCertificate> free_addable;
  std::vector<SwappableColour> swappables;  // meaningful when no free addable
};
ManyGoodResult many_good_dichotomy(const Instance& inst, const Family& fam, const Ris& s, int b);

/// For a swappable colour c with witness y such that S + (y,b) is NOT an
/// RIS, every x in B_c independent of the projection of S yields a swap
/// certificate with that witness. Contract_error if S + (y,b) is an RIS
/// (the caller should take the free addition instead).
std::vector<AddabilityCertificate> addable_via_swappable(const Instance& inst, const Family& fam,
                                                         const Ris& s, int b,
                                                         const SwappableColour& sc);

/// An injection from the elements of S into B_b where each image is
/// independent of the rest of S, found by maximum bipartite matching.
/// Throws theorem_violation if no perfect matching on the S side exists.
std::vector<std::pair<Coloured, ElementId>> build_witness_injection(const Instance& inst,
                                                                    const Ris& s, int b);

/// Either a concrete volume-increasing certificate, or the full addable
/// list, asserted to contain at least (n - |S|)(n - f) certificates when
/// f < n.
struct CountAddableResult {
  std::optional<AddabilityCertificate> augment;
  std::vector<AddabilityCertificate> addable;
};
CountAddableResult count_addable_or_augment(const Instance& inst, const Family& fam, const Ris& s,
                                            int b);

}  // namespace rainbow
