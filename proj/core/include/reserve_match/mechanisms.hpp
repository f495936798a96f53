#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reserve_match/assignment.hpp"
#include "reserve_match/choice_rules.hpp"
#include "reserve_match/instance.hpp"

namespace reserve_match {

enum class MechanismKind {
  two_smh_da,
  uppsc_1990,
  upsc_mrc,
  tripurari_sharan,
  serial_dictatorship,
};

std::string to_string(MechanismKind kind);
std::optional<MechanismKind> mechanism_from_string(const std::string& name);

struct MechanismSpec {
  MechanismKind kind = MechanismKind::two_smh_da;
  std::optional<BoostConfig> boost;  // only meaningful for two_smh_da
};

// One deferred-acceptance round at one job.
struct JobRound {
  int job;
  std::vector<int> applicants;  // tentative holders plus new proposers
  ChoiceResult chosen;
  std::vector<int> rejected;
};

struct Round {
  std::vector<JobRound> jobs;
};

// Position vacated and reassigned by a legacy mechanism.
struct Vacancy {
  int job;
  VerticalCategory category;
  int vacated_by;
  std::optional<int> filled_by;
};

struct PhaseArtifacts {
  std::vector<int> mrcs;  // meritorious reserved candidates, descending merit
  // key "o" is the general-category waitlist, otherwise a category id
  std::vector<std::pair<std::string, std::vector<int>>> waitlists;
  std::vector<Vacancy> vacancies;
  std::vector<std::string> notes;
};

struct MechanismRun {
  std::string mechanism;
  Assignment assignment;
  std::vector<Round> rounds;   // populated by deferred acceptance
  PhaseArtifacts artifacts;    // populated by the legacy mechanisms
  std::vector<std::string> warnings;
  // Present when the run used the soft-reserve boost variant. Under a boost,
  // non-members may hold boosted-category positions, so the assignment is
  // only meaningful together with this configuration.
  std::optional<BoostConfig> boost;
};

// Deferred acceptance where every job selects with the 2SMH rule (or its
// boosted variant). Batch rounds: all currently rejected individuals propose
// simultaneously; rejections are permanent.
MechanismRun run_2smh_da(const Instance& instance,
                         const std::optional<BoostConfig>& boost = std::nullopt);

// Positions made available to a serial dictatorship, all in one vertical
// category.
struct PositionPool {
  VerticalCategory category;
  std::vector<int> remaining;  // by job index
};

// Merit-order serial dictatorship over the pool: each eligible candidate in
// descending merit takes her most preferred job with a position left.
// Requires a common merit ranking across jobs.
Assignment run_serial_dictatorship(const Instance& instance, const PositionPool& pool);

// The 1990 UPPSC mechanism: final open-position serial dictatorship, then a
// final per-category serial dictatorship among the unassigned members.
MechanismRun run_uppsc_1990(const Instance& instance);

// The UPSC civil-services mechanism with MRC migration and waitlists.
MechanismRun run_upsc_mrc(const Instance& instance);

// The medical-college rule: an MRC may displace the lowest-merit same-category
// holder at a preferred college, and the displaced candidate inherits the
// vacated open seat.
MechanismRun run_tripurari_sharan(const Instance& instance);

MechanismRun run_mechanism(const Instance& instance, const MechanismSpec& spec);

}  // namespace reserve_match
