#include "reserve_match/oracle.hpp"

#include <algorithm>

#include "reserve_match/choice_rules.hpp"
#include "reserve_match/mechanisms.hpp"

namespace reserve_match {

namespace {

void check_limits(const Instance& instance, const OracleLimits& limits) {
  if (instance.num_individuals() > limits.max_individuals) {
    throw InstanceTooLargeError("enumeration is limited to " +
                                std::to_string(limits.max_individuals) + " individuals; got " +
                                std::to_string(instance.num_individuals()));
  }
  int seats = 0;
  for (const auto& job : instance.jobs()) seats += job.capacity;
  if (seats > limits.max_total_seats) {
    throw InstanceTooLargeError("enumeration is limited to " +
                                std::to_string(limits.max_total_seats) + " total positions; got " +
                                std::to_string(seats));
  }
}

struct Enumerator {
  const Instance& instance;
  const std::function<bool(const Assignment&)>& visit;
  Assignment current;
  std::vector<std::vector<int>> used;  // [job][vertical ordinal]
  long long count = 0;
  bool stopped = false;

  // Options per individual are scanned as: unassigned, then (job, vertical)
  // in master order with open first.
  void recurse(int individual) {
    if (stopped) return;
    if (individual == instance.num_individuals()) {
      ++count;
      if (!visit(current)) stopped = true;
      return;
    }
    current.at(individual) = std::nullopt;
    recurse(individual + 1);
    for (int j = 0; j < instance.num_jobs() && !stopped; ++j) {
      for (int ordinal = 0; ordinal < instance.num_verticals() && !stopped; ++ordinal) {
        const auto v = VerticalCategory::from_ordinal(ordinal);
        if (!instance.eligible(individual, v)) continue;
        if (used[j][ordinal] >= instance.job(j).reserve(v)) continue;
        ++used[j][ordinal];
        current.at(individual) = Placement{j, v};
        recurse(individual + 1);
        current.at(individual) = std::nullopt;
        --used[j][ordinal];
      }
    }
  }
};

}  // namespace

long long enumerate_assignments(const Instance& instance, const OracleLimits& limits,
                                const std::function<bool(const Assignment&)>& visit) {
  check_limits(instance, limits);
  Enumerator enumerator{instance, visit, Assignment(instance.num_individuals()),
                        std::vector<std::vector<int>>(
                            instance.num_jobs(), std::vector<int>(instance.num_verticals(), 0))};
  enumerator.recurse(0);
  return enumerator.count;
}

std::vector<Assignment> axiom_satisfying_set(const Instance& instance,
                                             const OracleLimits& limits) {
  std::vector<Assignment> satisfying;
  enumerate_assignments(instance, limits, [&](const Assignment& assignment) {
    if (satisfies_all_axioms(instance, assignment)) satisfying.push_back(assignment);
    return true;
  });
  return satisfying;
}

DominanceReport verify_dominance(const Instance& instance, const OracleLimits& limits) {
  DominanceReport report;
  report.da_outcome = run_2smh_da(instance).assignment;
  enumerate_assignments(instance, limits, [&](const Assignment& assignment) {
    if (!satisfies_all_axioms(instance, assignment)) return true;
    ++report.satisfying_count;
    const auto verdict = pareto_compare(instance, report.da_outcome, assignment);
    if (verdict != ParetoVerdict::a_dominates && verdict != ParetoVerdict::equal) {
      report.pass = false;
      report.counterexamples.push_back(assignment);
    }
    return true;
  });
  return report;
}

StabilityReport check_stability(const Instance& instance, const Assignment& assignment) {
  StabilityReport report;

  for (int i = 0; i < instance.num_individuals(); ++i) {
    const auto job = assignment.job_of(i);
    if (job.has_value() && !instance.acceptable(i, *job)) {
      report.breaches.push_back(
          StabilityBreach{StabilityBreach::Kind::not_individually_rational, i, *job});
    }
  }

  const auto table = holders_table(instance, assignment);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    const auto all_holders = assignment.holders(j);
    const auto choice = two_smh_choose(instance, j, all_holders);
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      if (choice.chosen(v) != table[j][ordinal]) {
        report.breaches.push_back(
            StabilityBreach{StabilityBreach::Kind::job_irrational, -1, j, v});
      }
    }
  }

  for (int i = 0; i < instance.num_individuals(); ++i) {
    for (int j = 0; j < instance.num_jobs(); ++j) {
      if (!instance.prefers(i, j, assignment.job_of(i))) continue;
      auto applicants = assignment.holders(j);
      applicants.push_back(i);
      std::sort(applicants.begin(), applicants.end());
      const auto aggregate = aggregate_choose(instance, j, applicants);
      if (std::binary_search(aggregate.begin(), aggregate.end(), i)) {
        report.breaches.push_back(StabilityBreach{StabilityBreach::Kind::blocking_pair, i, j});
      }
    }
  }

  report.pass = report.breaches.empty();
  return report;
}

EquivalenceReport equivalence_axioms_stability(const Instance& instance,
                                               const OracleLimits& limits) {
  EquivalenceReport report;
  enumerate_assignments(instance, limits, [&](const Assignment& assignment) {
    if (satisfies_all_axioms(instance, assignment) &&
        !check_stability(instance, assignment).pass) {
      report.pass = false;
      report.satisfying_but_unstable.push_back(assignment);
    }
    return true;
  });
  return report;
}

std::optional<Assignment> find_pareto_improvement(const Instance& instance,
                                                  const Assignment& assignment,
                                                  const OracleLimits& limits) {
  std::optional<Assignment> improvement;
  enumerate_assignments(instance, limits, [&](const Assignment& candidate) {
    if (pareto_compare(instance, candidate, assignment) == ParetoVerdict::a_dominates) {
      improvement = candidate;
      return false;
    }
    return true;
  });
  return improvement;
}

}  // namespace reserve_match
