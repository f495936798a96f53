#pragma once

#include <span>
#include <vector>

#include "reserve_match/hr_matching.hpp"
#include "reserve_match/instance.hpp"

namespace reserve_match {

// One selection made by the meritorious horizontal rule. HR-phase picks carry
// the honored count they established, so an audit can show why an individual
// was selected ahead of higher-merit applicants.
struct ChoicePick {
  int individual;
  bool hr_phase;          // true: Step 1 (HR), false: Step 2 (merit fill)
  int honored_after = 0;  // n after this pick, meaningful for HR-phase picks
};

struct SingleChoice {
  std::vector<int> chosen;        // ascending by individual index
  std::vector<ChoicePick> picks;  // in selection order

  bool contains(int individual) const;
};

// Meritorious horizontal single-category rule: Step 1 repeatedly selects the
// highest-merit applicant whose addition raises the honored-HR count by one;
// Step 2 fills the remaining positions purely by merit.
SingleChoice mh_choose(const Instance& instance, int job, VerticalCategory v,
                       std::span<const int> applicants);

// Per-category chosen sets for one job.
class ChoiceResult {
 public:
  ChoiceResult() = default;
  explicit ChoiceResult(int num_verticals) : per_vertical_(num_verticals) {}

  const SingleChoice& at(VerticalCategory v) const { return per_vertical_[v.ordinal()]; }
  SingleChoice& at(VerticalCategory v) { return per_vertical_[v.ordinal()]; }

  const std::vector<int>& chosen(VerticalCategory v) const { return per_vertical_[v.ordinal()].chosen; }

  std::vector<int> aggregate() const;  // sorted union of the chosen sets
  int total() const;
  int num_verticals() const { return static_cast<int>(per_vertical_.size()); }

 private:
  std::vector<SingleChoice> per_vertical_;  // by vertical ordinal
};

// 2-step meritorious horizontal rule: the open category chooses first from
// all applicants; each VR category then applies the single-category rule to
// its remaining members.
ChoiceResult two_smh_choose(const Instance& instance, int job, std::span<const int> applicants);

std::vector<int> aggregate_choose(const Instance& instance, int job,
                                  std::span<const int> applicants);

// Soft-reserve variant for one boosted category: everyone stays eligible for
// the boosted category's positions, members get a fixed merit boost there,
// and VR categories are processed in an explicit sequence.
struct BoostConfig {
  int boosted_category = 0;   // index into the instance's category list
  double boost = 10.0;
  std::vector<int> sequence;  // permutation of all category indices
};

// Throws TiedMeritAfterBoostError if boosting creates a tie among the
// applicants considered for the boosted category.
ChoiceResult two_smh_boost_choose(const Instance& instance, int job,
                                  std::span<const int> applicants, const BoostConfig& config);

// Permutation and category-index sanity; throws std::invalid_argument.
void validate_boost_config(const Instance& instance, const BoostConfig& config);

}  // namespace reserve_match
