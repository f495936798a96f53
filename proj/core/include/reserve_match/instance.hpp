#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reserve_match/errors.hpp"

namespace reserve_match {

// Token reserved for the open category in file formats and reserve maps.
// It is never a valid VR-category id.
inline constexpr const char* kOpenToken = "o";

// A vertical category for positions: either the open category "o" or one of
// the instance's VR-protected categories (by index into the category list).
class VerticalCategory {
 public:
  static constexpr VerticalCategory open() { return VerticalCategory(-1); }
  static constexpr VerticalCategory reserved(int category_index) {
    return VerticalCategory(category_index);
  }
  // Dense index: 0 for open, 1 + c for VR category c.
  static constexpr VerticalCategory from_ordinal(int ordinal) {
    return VerticalCategory(ordinal - 1);
  }

  constexpr bool is_open() const { return index_ < 0; }
  constexpr int category_index() const { return index_; }
  constexpr int ordinal() const { return index_ + 1; }

  friend constexpr bool operator==(VerticalCategory, VerticalCategory) = default;

 private:
  explicit constexpr VerticalCategory(int index) : index_(index) {}
  int index_;
};

// Unvalidated instance, mirroring the JSON file format one-to-one.
struct InstanceData {
  struct Job {
    std::string id;
    long long capacity = 0;
    std::map<std::string, long long> vr_reserves;
    // outer key: vertical category id ("o" or a VR category), inner: trait id
    std::map<std::string, std::map<std::string, long long>> hr_reserves;
  };

  struct Individual {
    std::string id;
    std::optional<std::string> category;  // nullopt = general category
    std::vector<std::string> traits;
    std::map<std::string, double> merit;
    std::vector<std::string> preferences;  // most preferred first
  };

  std::vector<std::string> categories;
  std::vector<std::string> traits;
  std::vector<Job> jobs;
  std::vector<Individual> individuals;
};

struct Job {
  std::string id;
  int capacity = 0;
  int open_capacity = 0;                      // capacity - sum(vr_reserves)
  std::vector<int> vr_reserves;               // by category index
  std::vector<std::vector<int>> hr_reserves;  // [vertical ordinal][trait index]

  int reserve(VerticalCategory v) const {
    return v.is_open() ? open_capacity : vr_reserves[v.category_index()];
  }
  const std::vector<int>& hr_row(VerticalCategory v) const {
    return hr_reserves[v.ordinal()];
  }
  int total_hr(VerticalCategory v) const {
    int total = 0;
    for (int r : hr_reserves[v.ordinal()]) total += r;
    return total;
  }
};

struct Individual {
  std::string id;
  std::optional<int> category;  // index into categories; nullopt = general
  std::vector<int> traits;      // sorted trait indices
  std::vector<char> has_trait;  // by trait index
  std::vector<double> merit;    // by job index
  std::vector<int> preferences; // job indices, most preferred first
};

enum class TieBreak {
  reject,  // tied merit scores are a validation error (default)
  by_id,   // perturb ties deterministically by lexicographic individual id
};

// Returns the complete list of invariant violations; empty means valid.
std::vector<ValidationIssue> validate(const InstanceData& data);

// Validated, index-based instance. Immutable after construction; safe to
// share across threads.
class Instance {
 public:
  // Throws ValidationError carrying every violation if `data` is invalid.
  // With TieBreak::by_id, tied merit scores are perturbed instead of rejected
  // and tie_broken() reports that the instance was modified.
  static Instance compile(const InstanceData& data, TieBreak tie_break = TieBreak::reject);

  int num_jobs() const { return static_cast<int>(jobs_.size()); }
  int num_individuals() const { return static_cast<int>(individuals_.size()); }
  int num_categories() const { return static_cast<int>(categories_.size()); }
  int num_traits() const { return static_cast<int>(traits_.size()); }
  int num_verticals() const { return num_categories() + 1; }

  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<std::string>& traits() const { return traits_; }
  const std::vector<Job>& jobs() const { return jobs_; }
  const std::vector<Individual>& individuals() const { return individuals_; }

  const Job& job(int j) const { return jobs_[j]; }
  const Individual& individual(int i) const { return individuals_[i]; }

  std::optional<int> job_index(const std::string& id) const;
  std::optional<int> individual_index(const std::string& id) const;
  std::optional<int> category_index(const std::string& id) const;
  std::optional<int> trait_index(const std::string& id) const;

  // "o" for open, otherwise the category id.
  std::string vertical_id(VerticalCategory v) const;
  std::optional<VerticalCategory> vertical_from_id(const std::string& id) const;

  bool eligible(int individual, VerticalCategory v) const {
    return v.is_open() || individuals_[individual].category == v.category_index();
  }

  double merit(int individual, int job) const { return individuals_[individual].merit[job]; }

  static constexpr int kUnacceptable = std::numeric_limits<int>::max();

  // Preference rank of `job` for `individual`: position in her list, or
  // kUnacceptable when the job is absent (worse than staying unassigned).
  int pref_rank(int individual, int job) const { return pref_rank_[individual][job]; }

  bool acceptable(int individual, int job) const {
    return pref_rank(individual, job) != kUnacceptable;
  }

  // Strict preference over outcomes under the extension to (job, category)
  // pairs: categories of one job are interchangeable, unassigned ranks
  // between the acceptable list and the unacceptable jobs.
  bool prefers(int individual, std::optional<int> job_a, std::optional<int> job_b) const {
    return outcome_rank(individual, job_a) < outcome_rank(individual, job_b);
  }

  bool tie_broken() const { return tie_broken_; }

  // Canonical data form (zero reserves omitted). compile(to_data()) is the
  // identity on validated instances.
  InstanceData to_data() const;

  // Copy with one individual's preference list replaced; used by the
  // strategy-proofness tester.
  Instance with_preferences(int individual, const std::vector<int>& preferences) const;

 private:
  Instance() = default;

  int outcome_rank(int individual, std::optional<int> job) const {
    if (!job.has_value()) return static_cast<int>(individuals_[individual].preferences.size());
    const int rank = pref_rank(individual, *job);
    if (rank == kUnacceptable) {
      return static_cast<int>(individuals_[individual].preferences.size()) + 1;
    }
    return rank;
  }

  void rebuild_lookups();

  std::vector<std::string> categories_;
  std::vector<std::string> traits_;
  std::vector<Job> jobs_;
  std::vector<Individual> individuals_;
  std::vector<std::vector<int>> pref_rank_;  // [individual][job]
  std::map<std::string, int> job_by_id_;
  std::map<std::string, int> individual_by_id_;
  std::map<std::string, int> category_by_id_;
  std::map<std::string, int> trait_by_id_;
  bool tie_broken_ = false;
};

// Individuals ordered by descending merit when every job ranks them the same
// way; nullopt when the instance has no common merit ranking.
std::optional<std::vector<int>> common_merit_order(const Instance& instance);

}  // namespace reserve_match
