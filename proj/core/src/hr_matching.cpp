#include "reserve_match/hr_matching.hpp"

#include <algorithm>

namespace reserve_match {

HrMatcher::HrMatcher(const Instance& instance, int job, VerticalCategory v)
    : instance_(&instance),
      reserves_(&instance.job(job).hr_row(v)),
      occupants_(instance.num_traits()),
      trait_of_(instance.num_individuals(), -1) {
  for (int r : *reserves_) slot_total_ += r;
}

bool HrMatcher::try_add(int individual) {
  if (count_ == slot_total_) return false;
  std::vector<char> visited(instance_->num_traits(), 0);
  if (augment(individual, visited)) {
    ++count_;
    return true;
  }
  return false;
}

bool HrMatcher::augment(int individual, std::vector<char>& visited) {
  for (int trait : instance_->individual(individual).traits) {
    if ((*reserves_)[trait] == 0 || visited[trait]) continue;
    visited[trait] = 1;
    auto& slot_holders = occupants_[trait];
    if (static_cast<int>(slot_holders.size()) < (*reserves_)[trait]) {
      slot_holders.push_back(individual);
      trait_of_[individual] = trait;
      return true;
    }
    // All trait-t slots are taken; try to relocate one occupant.
    for (int& occupant : slot_holders) {
      const int displaced = occupant;
      if (augment(displaced, visited)) {
        occupant = individual;
        trait_of_[individual] = trait;
        return true;
      }
    }
  }
  return false;
}

TraitMatching HrMatcher::witness() const {
  TraitMatching matching;
  for (int i = 0; i < static_cast<int>(trait_of_.size()); ++i) {
    if (trait_of_[i] >= 0) matching.assigned.emplace_back(i, trait_of_[i]);
  }
  return matching;
}

namespace {

void require_eligibility(const Instance& instance, VerticalCategory v,
                         std::span<const int> individuals) {
  for (int i : individuals) {
    if (!instance.eligible(i, v)) {
      throw IneligibleIndividualError("individual '" + instance.individual(i).id +
                                      "' is not eligible for category-'" +
                                      instance.vertical_id(v) + "' positions");
    }
  }
}

HonoredResult run_matcher(const Instance& instance, int job, VerticalCategory v,
                          std::span<const int> individuals) {
  HrMatcher matcher(instance, job, v);
  std::vector<int> ordered(individuals.begin(), individuals.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  for (int i : ordered) matcher.try_add(i);
  return HonoredResult{matcher.count(), matcher.witness()};
}

}  // namespace

int honored_count(const Instance& instance, int job, VerticalCategory v,
                  std::span<const int> individuals) {
  require_eligibility(instance, v, individuals);
  return run_matcher(instance, job, v, individuals).count;
}

HonoredResult honored_matching(const Instance& instance, int job, VerticalCategory v,
                               std::span<const int> individuals) {
  require_eligibility(instance, v, individuals);
  return run_matcher(instance, job, v, individuals);
}

}  // namespace reserve_match
