#pragma once

#include <functional>
#include <vector>

#include "reserve_match/assignment.hpp"
#include "reserve_match/axioms.hpp"
#include "reserve_match/instance.hpp"

namespace reserve_match {

// Size guard for exhaustive enumeration; defaults keep a full sweep under a
// second per instance.
struct OracleLimits {
  int max_individuals = 6;
  int max_total_seats = 8;
};

// Visits every assignment (eligibility- and capacity-respecting function from
// individuals to (job, category) pairs or unassigned) exactly once, in a
// fixed deterministic order. Returns the number visited. The visitor may
// return false to stop. Throws InstanceTooLargeError beyond the limits.
long long enumerate_assignments(const Instance& instance, const OracleLimits& limits,
                                const std::function<bool(const Assignment&)>& visit);

// The exact set of assignments passing all five axiom checkers.
std::vector<Assignment> axiom_satisfying_set(const Instance& instance,
                                             const OracleLimits& limits = {});

struct DominanceReport {
  bool pass = true;
  Assignment da_outcome;
  long long satisfying_count = 0;
  std::vector<Assignment> counterexamples;  // axiom-satisfying but not weakly dominated
};

// Per-profile dominance: the 2SMH-DA outcome must weakly Pareto dominate
// every axiom-satisfying assignment. A counterexample is a bug.
DominanceReport verify_dominance(const Instance& instance, const OracleLimits& limits = {});

struct StabilityBreach {
  enum class Kind { not_individually_rational, job_irrational, blocking_pair };
  Kind kind;
  int individual = -1;  // the blocking or irrational individual, if any
  int job = -1;
  VerticalCategory category = VerticalCategory::open();  // for job_irrational
};

struct StabilityReport {
  bool pass = true;
  std::vector<StabilityBreach> breaches;
};

// Stability with respect to the 2SMH choice profile: individual rationality,
// job rationality (each job would re-choose exactly its holders, category by
// category), and no blocking pair.
StabilityReport check_stability(const Instance& instance, const Assignment& assignment);

struct EquivalenceReport {
  bool pass = true;
  std::vector<Assignment> satisfying_but_unstable;
};

// One direction of the bridge between the axioms and stability: every
// axiom-satisfying assignment must be stable.
EquivalenceReport equivalence_axioms_stability(const Instance& instance,
                                               const OracleLimits& limits = {});

// Global efficiency by enumeration: returns a dominating assignment if one
// exists, nullopt when `assignment` is Pareto efficient. Nothing scalable
// exists for this check; it lives here with the other exhaustive sweeps.
std::optional<Assignment> find_pareto_improvement(const Instance& instance,
                                                  const Assignment& assignment,
                                                  const OracleLimits& limits = {});

}  // namespace reserve_match
