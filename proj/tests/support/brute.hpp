#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "reserve_match/assignment.hpp"
#include "reserve_match/instance.hpp"

// Independent reference implementations, kept deliberately naive. They never
// share code with the library routines they cross-check.
namespace reserve_match::testing::brute {

// Maximum trait-matching size by exhaustive search over all injective
// trait-respecting maps from individuals to explicit slots.
inline int honored(const Instance& instance, int job, VerticalCategory v,
                   const std::vector<int>& individuals) {
  // slot list: one entry per HR-protected position, carrying its trait
  std::vector<int> slot_traits;
  const auto& row = instance.job(job).hr_row(v);
  for (int t = 0; t < instance.num_traits(); ++t) {
    for (int k = 0; k < row[t]; ++k) slot_traits.push_back(t);
  }

  std::vector<char> slot_used(slot_traits.size(), 0);
  std::function<int(std::size_t)> best = [&](std::size_t index) -> int {
    if (index == individuals.size()) return 0;
    int result = best(index + 1);  // leave this individual unmatched
    const auto& person = instance.individual(individuals[index]);
    for (std::size_t s = 0; s < slot_traits.size(); ++s) {
      if (slot_used[s] || !person.has_trait[slot_traits[s]]) continue;
      slot_used[s] = 1;
      result = std::max(result, 1 + best(index + 1));
      slot_used[s] = 0;
    }
    return result;
  };
  return best(0);
}

inline int honored_holders(const Instance& instance, int job, VerticalCategory v,
                           const Assignment& assignment) {
  return honored(instance, job, v, assignment.holders(job, v));
}

// The five desiderata, written as literal quantifier sweeps over the
// definitions with the exhaustive honored-count above.

inline bool individually_rational(const Instance& instance, const Assignment& assignment) {
  for (int i = 0; i < instance.num_individuals(); ++i) {
    const auto job = assignment.job_of(i);
    if (job.has_value() && !instance.acceptable(i, *job)) return false;
  }
  return true;
}

inline bool non_wasteful(const Instance& instance, const Assignment& assignment) {
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      for (int i = 0; i < instance.num_individuals(); ++i) {
        if (instance.prefers(i, j, assignment.job_of(i)) &&
            static_cast<int>(assignment.holders(j, v).size()) < instance.job(j).reserve(v) &&
            instance.eligible(i, v)) {
          return false;
        }
      }
    }
  }
  return true;
}

inline bool max_hr_accommodated(const Instance& instance, const Assignment& assignment) {
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      auto holders = assignment.holders(j, v);
      for (int i = 0; i < instance.num_individuals(); ++i) {
        if (!instance.eligible(i, v)) continue;
        if (!instance.prefers(i, j, assignment.job_of(i))) continue;
        auto with = holders;
        with.push_back(i);
        if (honored(instance, j, v, with) > honored(instance, j, v, holders)) return false;
      }
    }
  }
  return true;
}

inline bool no_justified_envy(const Instance& instance, const Assignment& assignment) {
  for (int i = 0; i < instance.num_individuals(); ++i) {
    const auto& placement = assignment.at(i);
    if (!placement.has_value()) continue;
    const int j = placement->job;
    const auto v = placement->category;
    for (int other = 0; other < instance.num_individuals(); ++other) {
      if (!instance.eligible(other, v)) continue;
      if (!instance.prefers(other, j, assignment.job_of(other))) continue;
      if (instance.merit(i, j) > instance.merit(other, j)) continue;
      auto holders = assignment.holders(j, v);
      auto swapped = holders;
      std::erase(swapped, i);
      swapped.push_back(other);
      if (!(honored(instance, j, v, holders) > honored(instance, j, v, swapped))) return false;
    }
  }
  return true;
}

inline bool vr_compliant(const Instance& instance, const Assignment& assignment) {
  const auto open = VerticalCategory::open();
  for (int i = 0; i < instance.num_individuals(); ++i) {
    const auto& placement = assignment.at(i);
    if (!placement.has_value() || placement->category.is_open()) continue;
    const int j = placement->job;
    const auto open_holders = assignment.holders(j, open);
    if (static_cast<int>(open_holders.size()) != instance.job(j).open_capacity) return false;
    for (int holder : open_holders) {
      if (instance.merit(holder, j) > instance.merit(i, j)) continue;
      auto swapped = open_holders;
      std::erase(swapped, holder);
      swapped.push_back(i);
      if (!(honored(instance, j, open, open_holders) > honored(instance, j, open, swapped))) {
        return false;
      }
    }
    auto with = open_holders;
    with.push_back(i);
    if (honored(instance, j, open, with) > honored(instance, j, open, open_holders)) return false;
  }
  return true;
}

inline bool satisfies_all(const Instance& instance, const Assignment& assignment) {
  return individually_rational(instance, assignment) && non_wasteful(instance, assignment) &&
         max_hr_accommodated(instance, assignment) && no_justified_envy(instance, assignment) &&
         vr_compliant(instance, assignment);
}

// Counts assignments by a different recursion than the library enumerator:
// position classes pick disjoint subsets of individuals instead of
// individuals picking positions.
inline long long count_assignments(const Instance& instance) {
  struct Position {
    int job;
    VerticalCategory v;
    int seats;
  };
  std::vector<Position> positions;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      if (instance.job(j).reserve(v) > 0) {
        positions.push_back({j, v, instance.job(j).reserve(v)});
      }
    }
  }

  std::vector<char> taken(instance.num_individuals(), 0);
  std::function<long long(std::size_t)> count = [&](std::size_t p) -> long long {
    if (p == positions.size()) return 1;  // everyone left is unassigned
    const auto& position = positions[p];
    std::vector<int> eligible;
    for (int i = 0; i < instance.num_individuals(); ++i) {
      if (!taken[i] && instance.eligible(i, position.v)) eligible.push_back(i);
    }
    long long total = 0;
    // all subsets of the eligible pool up to the seat count
    const int n = static_cast<int>(eligible.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<int>(__builtin_popcount(mask)) > position.seats) continue;
      for (int b = 0; b < n; ++b) {
        if (mask & (1u << b)) taken[eligible[b]] = 1;
      }
      total += count(p + 1);
      for (int b = 0; b < n; ++b) {
        if (mask & (1u << b)) taken[eligible[b]] = 0;
      }
    }
    return total;
  };
  return count(0);
}

}  // namespace reserve_match::testing::brute
