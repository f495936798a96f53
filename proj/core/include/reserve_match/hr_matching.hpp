#pragma once

#include <span>
#include <utility>
#include <vector>

#include "reserve_match/instance.hpp"

namespace reserve_match {

// Secondary assignment of individuals to HR-protected positions within one
// (job, vertical category). Slots of the same trait are interchangeable, so
// the witness records (individual, trait) pairs.
struct TraitMatching {
  std::vector<std::pair<int, int>> assigned;  // (individual, trait), ascending by individual

  int size() const { return static_cast<int>(assigned.size()); }
};

struct HonoredResult {
  int count = 0;
  TraitMatching witness;
};

// n_j^v(I): the maximum number of HR-protected positions of (job, v) that can
// be honored by the individuals in I, i.e. the size of a maximum-cardinality
// matching in the bipartite HR graph. Throws IneligibleIndividualError when I
// contains an individual not eligible for v.
int honored_count(const Instance& instance, int job, VerticalCategory v,
                  std::span<const int> individuals);

// Same, plus one maximum trait-matching as a witness. Deterministic: the
// augmenting search scans individuals and traits in master-list order.
HonoredResult honored_matching(const Instance& instance, int job, VerticalCategory v,
                               std::span<const int> individuals);

// Incremental rank tracker for one (job, vertical). try_add(i) augments the
// current matching and reports whether the honored count increased, which is
// exactly the membership test of the Step-1 greedy selection in the
// meritorious horizontal rule.
class HrMatcher {
 public:
  HrMatcher(const Instance& instance, int job, VerticalCategory v);

  // True iff n(S + i) = n(S) + 1; on success the matching now covers S + i.
  bool try_add(int individual);

  int count() const { return count_; }
  bool saturated() const { return count_ == slot_total_; }
  TraitMatching witness() const;

 private:
  bool augment(int individual, std::vector<char>& visited);

  const Instance* instance_;
  const std::vector<int>* reserves_;          // per trait
  int slot_total_ = 0;
  int count_ = 0;
  std::vector<std::vector<int>> occupants_;   // per trait, in placement order
  std::vector<int> trait_of_;                 // per individual, -1 = unmatched
};

}  // namespace reserve_match
