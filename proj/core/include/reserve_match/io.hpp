#pragma once

#include <span>
#include <string>
#include <string_view>

#include "reserve_match/assignment.hpp"
#include "reserve_match/axioms.hpp"
#include "reserve_match/generator.hpp"
#include "reserve_match/instance.hpp"
#include "reserve_match/mechanisms.hpp"
#include "reserve_match/oracle.hpp"

namespace reserve_match {

// Every document this library writes carries this version tag.
inline constexpr const char* kSchemaVersion = "v1";

// ---- instances -------------------------------------------------------------

// Throws ParseError on malformed JSON or unexpected shapes.
InstanceData parse_instance_data(std::string_view json_text);

// parse + validate + compile in one go; throws ParseError or ValidationError.
Instance load_instance(std::string_view json_text, TieBreak tie_break = TieBreak::reject);

// Canonical form: sorted keys, zero reserves omitted.
std::string instance_to_json(const Instance& instance, int indent = 2);

// ---- assignments -----------------------------------------------------------

// Includes a maximum trait-matching witness per (job, category).
std::string assignment_to_json(const Instance& instance, const Assignment& assignment,
                               int indent = 2);

// Reads the "assignment" map; any witness in the file is ignored (it is
// recomputable). Throws ParseError / ValidationError.
Assignment parse_assignment(const Instance& instance, std::string_view json_text);

// ---- reports ---------------------------------------------------------------

std::string mechanism_run_to_json(const Instance& instance, const MechanismRun& run,
                                  bool include_trace, int indent = 2);

std::string axiom_reports_to_json(const Instance& instance, std::span<const AxiomReport> reports,
                                  int indent = 2);

std::string deviations_to_json(const Instance& instance, const MechanismSpec& mechanism,
                               std::span<const Deviation> deviations, int indent = 2);

std::string pareto_compare_to_json(const Instance& instance, const Assignment& a,
                                   const Assignment& b, int indent = 2);

std::string oracle_report_to_json(const Instance& instance, const DominanceReport& dominance,
                                  const std::vector<Assignment>& satisfying,
                                  const EquivalenceReport& equivalence, int indent = 2);

// Header line `job,category,cutoff`, preceded by a `# schema: v1` comment.
std::string cutoffs_to_csv(const Instance& instance, std::span<const CutoffEntry> entries);

std::string validation_issues_to_json(std::span<const ValidationIssue> issues, int indent = 2);

std::string error_to_json(const std::string& code, const std::string& message, int indent = 2);

// ---- generator profiles ----------------------------------------------------

GenProfile parse_profile(std::string_view json_text);
std::string profile_to_json(const GenProfile& profile, int indent = 2);

}  // namespace reserve_match
