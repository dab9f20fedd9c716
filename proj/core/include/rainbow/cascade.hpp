#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rainbow/swaps.hpp"

namespace rainbow {

/// A chain of swap-and-transfer steps across distinct family members
/// S_0..S_{l-1} that frees its target: after executing the chain, the last
/// rewritten member can absorb the target while every invariant and the
/// total volume are preserved. freeing[i] is the colour consumed at step i;
/// transfers[i-1] is the element moving from member i into member i-1;
/// witnesses[i] is the out-of-F element of colour freeing[i] swapped in;
/// removed[i] is the element swapped out (it carries the next step's
/// colour).
struct CascadeChain {
  std::vector<int> members;
  std::vector<int> freeing;
  std::vector<Coloured> transfers;
  std::vector<ElementId> witnesses;
  std::vector<ElementId> removed;
  Coloured target;
  std::uint64_t family_version = 0;

  int length() const { return static_cast<int>(members.size()); }
  /// Colour paired with removed[i].
  int removed_colour(int i) const {
    return i + 1 < length() ? transfers[i].c : target.c;
  }
  bool operator==(const CascadeChain&) const = default;
};

/// Deterministic tie-break order for chains freeing the same element.
bool chain_less(const CascadeChain& a, const CascadeChain& b);

/// A cascade-addable element together with one concrete chain freeing it.
struct QEntry {
  Coloured elem;
  CascadeChain chain;
};

/// Re-checks every condition of cascade-addability against the family.
/// Throws stale_certificate on a version mismatch, theorem_violation when a
/// fresh chain fails a structural condition.
void validate_chain(const Instance& inst, const Family& fam, const CascadeChain& chain);

/// Q(S_0) for one non-transversal member: every element addable to S_0 with
/// a witness, for some missing colour, packaged as length-1 chains. Sorted
/// by element; one lexicographically-least chain each.
std::vector<QEntry> initial_Q(const Instance& inst, const Family& fam, int s0);

/// The member outside `used` holding the most Q elements (ties to the
/// smallest index). Asserts the pigeonhole bound |S ∩ Q| * (f - l) >= |Q|.
/// Contract_error if some Q element lies in no remaining member (the caller
/// should have augmented instead).
int choose_next(const Family& fam, std::span<const int> used, std::span<const QEntry> q);

/// Volume-increasing actions. DirectAdd places a free addable into a member
/// (with its simple swap when needed). CascadeFree executes a chain and adds
/// the freed target. CascadeTail executes a chain, pulls the target out of
/// tail_member into the chain's last member, and fills the hole with a free
/// certificate.
struct DirectAdd {
  int member = -1;
  AddabilityCertificate cert;
};
struct CascadeFree {
  CascadeChain chain;
};
struct CascadeTail {
  CascadeChain chain;
  int tail_member = -1;
  AddabilityCertificate tail_cert;
};
using VolumeAction = std::variant<DirectAdd, CascadeFree, CascadeTail>;

/// Extends Q along the chosen member sequence (last entry of `members_seq`
/// is the new S_l). Returns an augmenting action as soon as the pipeline
/// uncovers one, otherwise the next Q level built from witness-injection
/// images. Asserts the growth bound |NextQ| >= |S_l n Q|(n-f-l) - (l+1)n
/// whenever its right-hand side is positive.
struct ExtendResult {
  std::optional<VolumeAction> augment;
  std::vector<QEntry> next;
};
ExtendResult extend_Q(const Instance& inst, const Family& fam, std::span<const int> members_seq,
                      std::span<const QEntry> q);

/// Executes a chain: the family rewrite that frees the target. Volume is
/// unchanged; if final_addition (which must equal the chain target, still
/// outside F) is given it is added to the last rewritten member afterwards
/// and the volume grows by exactly one.
Family execute_cascade(const Instance& inst, const Family& fam, const CascadeChain& chain,
                       std::optional<Coloured> final_addition);

/// Applies any action, with full post-validation. Volume grows by one.
Family apply_action(const Instance& inst, const Family& fam, const VolumeAction& action);

struct CascadeTraceRecord {
  int level = 0;
  int q_size = 0;
  int chosen = -1;
  std::string action;
};

/// The cascade loop: seed Q from s0, repeatedly pick the densest member and
/// extend, until a free element or an augmenting action appears or the
/// length cap binds. force_s1 pins the first extension member.
std::optional<VolumeAction> cascade_search(const Instance& inst, const Family& fam, int s0,
                                           std::optional<int> force_s1, int l_max,
                                           std::vector<CascadeTraceRecord>* trace = nullptr);

}  // namespace rainbow
