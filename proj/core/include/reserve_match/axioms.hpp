#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reserve_match/assignment.hpp"
#include "reserve_match/instance.hpp"
#include "reserve_match/mechanisms.hpp"

namespace reserve_match {

// Witnesses carry enough context to re-verify the violation in isolation.

struct IrBreach {
  int individual;  // assigned to a job absent from her preference list
};

struct IdleSeat {
  int job;
  VerticalCategory category;  // under-filled category
  int individual;             // eligible and prefers the job
};

struct HrDishonored {
  int job;
  VerticalCategory category;
  int individual;  // adding her would raise the honored count
};

struct EnvyPair {
  int holder;    // assigned to (job, category)
  int claimant;  // eligible, prefers the job, justified envy toward holder
  int job;
  VerticalCategory category;
};

struct VrComplianceBreach {
  int individual;  // holds the VR position
  int job;
  int category;   // category index of the VR position
  int condition;  // failing clause: 1, 2 or 3
};

struct InterSeBreach {
  int higher;     // higher merit, worse outcome
  int lower;      // lower merit member of the same category
  int lower_job;  // job the lower-merit individual holds
};

using Witness =
    std::variant<IrBreach, IdleSeat, HrDishonored, EnvyPair, VrComplianceBreach, InterSeBreach>;

struct AxiomReport {
  std::string axiom;
  bool pass = true;
  std::vector<Witness> witnesses;
};

inline constexpr const char* kAxiomIndividualRationality = "individual-rationality";
inline constexpr const char* kAxiomNonWastefulness = "non-wastefulness";
inline constexpr const char* kAxiomMaxHrAccommodation = "max-hr-accommodation";
inline constexpr const char* kAxiomNoJustifiedEnvy = "no-justified-envy";
inline constexpr const char* kAxiomVrCompliance = "vr-compliance";
inline constexpr const char* kAxiomInterSeMerit = "inter-se-merit";

AxiomReport check_individual_rationality(const Instance& instance, const Assignment& assignment);
AxiomReport check_non_wastefulness(const Instance& instance, const Assignment& assignment);
AxiomReport check_max_hr_accommodation(const Instance& instance, const Assignment& assignment);
AxiomReport check_no_justified_envy(const Instance& instance, const Assignment& assignment);
AxiomReport check_vr_compliance(const Instance& instance, const Assignment& assignment);

// The five checkers above, in that order.
std::vector<AxiomReport> check_all_axioms(const Instance& instance, const Assignment& assignment);

// Early-exit conjunction of the five axioms; no witnesses collected.
bool satisfies_all_axioms(const Instance& instance, const Assignment& assignment);

enum class ParetoVerdict { a_dominates, b_dominates, equal, incomparable };

std::string to_string(ParetoVerdict verdict);

// Comparison under the extended preferences; `equal` means every individual
// is indifferent (same job or both unassigned).
ParetoVerdict pareto_compare(const Instance& instance, const Assignment& a, const Assignment& b);

// A profitable unilateral misreport found by exhaustive replay.
struct Deviation {
  int individual;
  std::vector<int> misreport;       // job indices, most preferred first
  std::optional<int> truthful_job;  // outcome under the true report
  std::optional<int> deviant_job;   // strictly better outcome under misreport
};

// Replays the mechanism under every strict ordering of every subset of jobs
// for each individual in turn. Throws ReportSpaceTooLargeError when the
// instance has more than `max_jobs` jobs.
std::vector<Deviation> check_strategy_proofness(const Instance& instance,
                                                const MechanismSpec& mechanism,
                                                int max_jobs = 4);

// Legacy diagnostic: within one member category, a higher-merit candidate
// must not end with a strictly worse job than a lower-merit one. Requires a
// common merit ranking.
AxiomReport check_inter_se_merit(const Instance& instance, const Assignment& assignment);

struct CutoffEntry {
  int job;
  VerticalCategory category;
  std::optional<double> cutoff;  // min merit among holders; nullopt if none
};

// One entry per (job, vertical category) with positions, in master order.
std::vector<CutoffEntry> cutoff_scores(const Instance& instance, const Assignment& assignment);

}  // namespace reserve_match
