#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace reserve_match {

// Base for all domain errors. `code()` is a stable machine-readable tag that
// the CLI maps into its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

enum class ValidationCode {
  duplicate_id,
  unknown_reference,
  reserved_category_token,
  negative_count,
  reserve_exceeds_capacity,
  hr_exceeds_vr,
  tied_merit_scores,
  merit_missing,
  ineligible_individual,
  capacity_exceeded,
};

std::string to_string(ValidationCode code);

struct ValidationIssue {
  ValidationCode code;
  std::string message;
};

// Carries the complete list of violations, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);

  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string summarize(const std::vector<ValidationIssue>& issues);
  std::vector<ValidationIssue> issues_;
};

class IneligibleIndividualError : public Error {
 public:
  explicit IneligibleIndividualError(const std::string& message)
      : Error("ineligible-individual", message) {}
};

class NoCommonMeritRankingError : public Error {
 public:
  explicit NoCommonMeritRankingError(const std::string& message)
      : Error("no-common-merit-ranking", message) {}
};

class TiedMeritAfterBoostError : public Error {
 public:
  explicit TiedMeritAfterBoostError(const std::string& message)
      : Error("tied-merit-after-boost", message) {}
};

class InstanceTooLargeError : public Error {
 public:
  explicit InstanceTooLargeError(const std::string& message)
      : Error("instance-too-large", message) {}
};

class ReportSpaceTooLargeError : public Error {
 public:
  explicit ReportSpaceTooLargeError(const std::string& message)
      : Error("report-space-too-large", message) {}
};

class InfeasibleProfileError : public Error {
 public:
  explicit InfeasibleProfileError(const std::string& message)
      : Error("infeasible-profile", message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

}  // namespace reserve_match
