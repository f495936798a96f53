#pragma once

#include <optional>
#include <vector>

#include "reserve_match/instance.hpp"

namespace reserve_match {

struct Placement {
  int job;
  VerticalCategory category;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Primary outcome: individual -> (job, vertical category) or unassigned.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_individuals) : placements_(num_individuals) {}

  int size() const { return static_cast<int>(placements_.size()); }

  const std::optional<Placement>& at(int individual) const { return placements_[individual]; }
  std::optional<Placement>& at(int individual) { return placements_[individual]; }

  std::optional<int> job_of(int individual) const {
    if (!placements_[individual].has_value()) return std::nullopt;
    return placements_[individual]->job;
  }

  // Individuals holding (job, v), ascending by index.
  std::vector<int> holders(int job, VerticalCategory v) const;
  // Individuals holding any position at `job`, ascending by index.
  std::vector<int> holders(int job) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::optional<Placement>> placements_;
};

// holders for every (job, vertical) in one scan: [job][vertical ordinal].
std::vector<std::vector<std::vector<int>>> holders_table(const Instance& instance,
                                                         const Assignment& assignment);

// Eligibility and per-(job, category) capacity; empty result means valid.
std::vector<ValidationIssue> validate_assignment(const Instance& instance,
                                                 const Assignment& assignment);

enum class Comparison { a_better, b_better, indifferent };

// Comparison under the preference extension: an individual is indifferent
// among categories of one job, and unassigned compares as the outside option.
Comparison compare_for_individual(const Instance& instance, int individual,
                                  const Assignment& a, const Assignment& b);

// Secondary view that forgets categories: individual -> job or unassigned.
struct JobMatching {
  std::vector<std::optional<int>> job_by_individual;

  friend bool operator==(const JobMatching&, const JobMatching&) = default;
};

JobMatching induce_job_matching(const Assignment& assignment);

}  // namespace reserve_match
