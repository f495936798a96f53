#include "reserve_match/assignment.hpp"

namespace reserve_match {

std::vector<int> Assignment::holders(int job, VerticalCategory v) const {
  std::vector<int> result;
  for (int i = 0; i < size(); ++i) {
    if (placements_[i].has_value() && placements_[i]->job == job && placements_[i]->category == v) {
      result.push_back(i);
    }
  }
  return result;
}

std::vector<int> Assignment::holders(int job) const {
  std::vector<int> result;
  for (int i = 0; i < size(); ++i) {
    if (placements_[i].has_value() && placements_[i]->job == job) result.push_back(i);
  }
  return result;
}

std::vector<std::vector<std::vector<int>>> holders_table(const Instance& instance,
                                                         const Assignment& assignment) {
  std::vector<std::vector<std::vector<int>>> table(
      instance.num_jobs(), std::vector<std::vector<int>>(instance.num_verticals()));
  for (int i = 0; i < assignment.size(); ++i) {
    if (const auto& placement = assignment.at(i)) {
      table[placement->job][placement->category.ordinal()].push_back(i);
    }
  }
  return table;
}

std::vector<ValidationIssue> validate_assignment(const Instance& instance,
                                                 const Assignment& assignment) {
  std::vector<ValidationIssue> issues;
  for (int i = 0; i < assignment.size(); ++i) {
    const auto& placement = assignment.at(i);
    if (!placement.has_value()) continue;
    if (!instance.eligible(i, placement->category)) {
      issues.push_back({ValidationCode::ineligible_individual,
                        "individual '" + instance.individual(i).id + "' holds a category-'" +
                            instance.vertical_id(placement->category) +
                            "' position but is not eligible for it"});
    }
  }
  const auto table = holders_table(instance, assignment);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      const int held = static_cast<int>(table[j][ordinal].size());
      if (held > instance.job(j).reserve(v)) {
        issues.push_back({ValidationCode::capacity_exceeded,
                          "job '" + instance.job(j).id + "', category '" +
                              instance.vertical_id(v) + "': " + std::to_string(held) +
                              " individuals hold " + std::to_string(instance.job(j).reserve(v)) +
                              " positions"});
      }
    }
  }
  return issues;
}

Comparison compare_for_individual(const Instance& instance, int individual, const Assignment& a,
                                  const Assignment& b) {
  const auto job_a = a.job_of(individual);
  const auto job_b = b.job_of(individual);
  if (instance.prefers(individual, job_a, job_b)) return Comparison::a_better;
  if (instance.prefers(individual, job_b, job_a)) return Comparison::b_better;
  return Comparison::indifferent;
}

JobMatching induce_job_matching(const Assignment& assignment) {
  JobMatching matching;
  matching.job_by_individual.resize(assignment.size());
  for (int i = 0; i < assignment.size(); ++i) {
    matching.job_by_individual[i] = assignment.job_of(i);
  }
  return matching;
}

}  // namespace reserve_match
