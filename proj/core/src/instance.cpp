#include "reserve_match/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace reserve_match {

std::string to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::duplicate_id: return "DuplicateId";
    case ValidationCode::unknown_reference: return "UnknownReference";
    case ValidationCode::reserved_category_token: return "ReservedCategoryToken";
    case ValidationCode::negative_count: return "NegativeCount";
    case ValidationCode::reserve_exceeds_capacity: return "ReserveExceedsCapacity";
    case ValidationCode::hr_exceeds_vr: return "HrExceedsVr";
    case ValidationCode::tied_merit_scores: return "TiedMeritScores";
    case ValidationCode::merit_missing: return "MeritMissing";
    case ValidationCode::ineligible_individual: return "IneligibleIndividual";
    case ValidationCode::capacity_exceeded: return "CapacityExceeded";
  }
  return "Unknown";
}

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error("validation", summarize(issues)), issues_(std::move(issues)) {}

std::string ValidationError::summarize(const std::vector<ValidationIssue>& issues) {
  std::ostringstream out;
  out << issues.size() << " validation issue" << (issues.size() == 1 ? "" : "s");
  for (const auto& issue : issues) {
    out << "; " << to_string(issue.code) << ": " << issue.message;
  }
  return out.str();
}

namespace {

void add_issue(std::vector<ValidationIssue>& issues, ValidationCode code, std::string message) {
  issues.push_back(ValidationIssue{code, std::move(message)});
}

void check_unique_ids(const std::vector<std::string>& ids, const char* what,
                      std::vector<ValidationIssue>& issues) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      add_issue(issues, ValidationCode::duplicate_id,
                std::string(what) + " id '" + id + "' appears more than once");
    }
  }
}

}  // namespace

std::vector<ValidationIssue> validate(const InstanceData& data) {
  std::vector<ValidationIssue> issues;

  check_unique_ids(data.categories, "category", issues);
  check_unique_ids(data.traits, "trait", issues);

  std::set<std::string> categories(data.categories.begin(), data.categories.end());
  std::set<std::string> traits(data.traits.begin(), data.traits.end());

  if (categories.count(kOpenToken)) {
    add_issue(issues, ValidationCode::reserved_category_token,
              "'o' denotes the open category and may not be used as a VR-category id");
  }

  std::vector<std::string> job_ids;
  job_ids.reserve(data.jobs.size());
  for (const auto& job : data.jobs) job_ids.push_back(job.id);
  check_unique_ids(job_ids, "job", issues);
  std::set<std::string> jobs(job_ids.begin(), job_ids.end());

  std::vector<std::string> individual_ids;
  individual_ids.reserve(data.individuals.size());
  for (const auto& ind : data.individuals) individual_ids.push_back(ind.id);
  check_unique_ids(individual_ids, "individual", issues);

  for (const auto& job : data.jobs) {
    if (job.capacity < 0) {
      add_issue(issues, ValidationCode::negative_count,
                "job '" + job.id + "' has negative capacity");
    }
    long long vr_total = 0;
    for (const auto& [cat, count] : job.vr_reserves) {
      if (!categories.count(cat)) {
        add_issue(issues, ValidationCode::unknown_reference,
                  "job '" + job.id + "' reserves positions for unknown category '" + cat + "'");
      }
      if (count < 0) {
        add_issue(issues, ValidationCode::negative_count,
                  "job '" + job.id + "' has a negative reserve for category '" + cat + "'");
      } else {
        vr_total += count;
      }
    }
    if (vr_total > job.capacity && job.capacity >= 0) {
      add_issue(issues, ValidationCode::reserve_exceeds_capacity,
                "job '" + job.id + "': VR reserves total " + std::to_string(vr_total) +
                    " exceeds capacity " + std::to_string(job.capacity));
    }
    for (const auto& [vertical, row] : job.hr_reserves) {
      const bool is_open = vertical == kOpenToken;
      if (!is_open && !categories.count(vertical)) {
        add_issue(issues, ValidationCode::unknown_reference,
                  "job '" + job.id + "' has HR reserves under unknown category '" + vertical + "'");
        continue;
      }
      long long hr_total = 0;
      for (const auto& [trait, count] : row) {
        if (!traits.count(trait)) {
          add_issue(issues, ValidationCode::unknown_reference,
                    "job '" + job.id + "' has an HR reserve for unknown trait '" + trait + "'");
        }
        if (count < 0) {
          add_issue(issues, ValidationCode::negative_count,
                    "job '" + job.id + "' has a negative HR reserve for trait '" + trait + "'");
        } else {
          hr_total += count;
        }
      }
      long long vertical_capacity = 0;
      if (is_open) {
        vertical_capacity = std::max<long long>(0, job.capacity - vr_total);
      } else if (auto it = job.vr_reserves.find(vertical); it != job.vr_reserves.end()) {
        vertical_capacity = std::max<long long>(0, it->second);
      }
      if (hr_total > vertical_capacity) {
        add_issue(issues, ValidationCode::hr_exceeds_vr,
                  "job '" + job.id + "', category '" + vertical + "': HR reserves total " +
                      std::to_string(hr_total) + " exceeds the " +
                      std::to_string(vertical_capacity) + " positions of that category");
      }
    }
  }

  for (const auto& ind : data.individuals) {
    if (ind.category.has_value()) {
      if (*ind.category == kOpenToken) {
        add_issue(issues, ValidationCode::unknown_reference,
                  "individual '" + ind.id + "' declares category 'o'; the open category has no members");
      } else if (!categories.count(*ind.category)) {
        add_issue(issues, ValidationCode::unknown_reference,
                  "individual '" + ind.id + "' belongs to unknown category '" + *ind.category + "'");
      }
    }
    for (const auto& trait : ind.traits) {
      if (!traits.count(trait)) {
        add_issue(issues, ValidationCode::unknown_reference,
                  "individual '" + ind.id + "' has unknown trait '" + trait + "'");
      }
    }
    for (const auto& [job, score] : ind.merit) {
      (void)score;
      if (!jobs.count(job)) {
        add_issue(issues, ValidationCode::unknown_reference,
                  "individual '" + ind.id + "' has a merit score for unknown job '" + job + "'");
      }
    }
    for (const auto& job : data.jobs) {
      if (!ind.merit.count(job.id)) {
        add_issue(issues, ValidationCode::merit_missing,
                  "individual '" + ind.id + "' has no merit score for job '" + job.id + "'");
      }
    }
    std::set<std::string> seen_prefs;
    for (const auto& job : ind.preferences) {
      if (!jobs.count(job)) {
        add_issue(issues, ValidationCode::unknown_reference,
                  "individual '" + ind.id + "' ranks unknown job '" + job + "'");
      }
      if (!seen_prefs.insert(job).second) {
        add_issue(issues, ValidationCode::duplicate_id,
                  "individual '" + ind.id + "' ranks job '" + job + "' more than once");
      }
    }
  }

  // Tied merit scores, per job.
  for (const auto& job : data.jobs) {
    std::map<double, std::vector<std::string>> by_score;
    for (const auto& ind : data.individuals) {
      if (auto it = ind.merit.find(job.id); it != ind.merit.end()) {
        by_score[it->second].push_back(ind.id);
      }
    }
    for (const auto& [score, holders] : by_score) {
      if (holders.size() > 1) {
        std::ostringstream msg;
        msg << "job '" << job.id << "': individuals";
        for (const auto& id : holders) msg << " '" << id << "'";
        msg << " share merit score " << score;
        add_issue(issues, ValidationCode::tied_merit_scores, msg.str());
      }
    }
  }

  return issues;
}

namespace {

// Deterministic tie perturbation: within each group of equal scores, the
// lexicographically smallest id keeps the score and later ids step down in
// equal increments that stay above the next lower distinct score.
bool break_ties_by_id(InstanceData& data) {
  bool changed = false;
  for (const auto& job : data.jobs) {
    std::map<double, std::vector<InstanceData::Individual*>> by_score;
    for (auto& ind : data.individuals) {
      if (ind.merit.count(job.id)) by_score[ind.merit[job.id]].push_back(&ind);
    }
    double previous_score = -std::numeric_limits<double>::infinity();
    for (auto& [score, group] : by_score) {  // ascending score order
      if (group.size() > 1) {
        std::sort(group.begin(), group.end(),
                  [](const auto* a, const auto* b) { return a->id < b->id; });
        const double floor_score =
            std::isinf(previous_score) ? score - 1.0 : previous_score;
        const double step = (score - floor_score) / static_cast<double>(group.size() + 1);
        for (std::size_t k = 1; k < group.size(); ++k) {
          group[k]->merit[job.id] = score - static_cast<double>(k) * step;
        }
        changed = true;
      }
      previous_score = score;
    }
  }
  return changed;
}

}  // namespace

Instance Instance::compile(const InstanceData& input, TieBreak tie_break) {
  InstanceData data = input;
  bool tie_broken = false;
  if (tie_break == TieBreak::by_id) {
    tie_broken = break_ties_by_id(data);
  }

  auto issues = validate(data);
  if (!issues.empty()) throw ValidationError(std::move(issues));

  Instance inst;
  inst.tie_broken_ = tie_broken;
  inst.categories_ = data.categories;
  inst.traits_ = data.traits;
  inst.rebuild_lookups();

  const int num_categories = inst.num_categories();
  const int num_traits = inst.num_traits();

  inst.jobs_.reserve(data.jobs.size());
  for (const auto& job_data : data.jobs) {
    Job job;
    job.id = job_data.id;
    job.capacity = static_cast<int>(job_data.capacity);
    job.vr_reserves.assign(num_categories, 0);
    for (const auto& [cat, count] : job_data.vr_reserves) {
      job.vr_reserves[inst.category_by_id_.at(cat)] = static_cast<int>(count);
    }
    int vr_total = 0;
    for (int r : job.vr_reserves) vr_total += r;
    job.open_capacity = job.capacity - vr_total;
    job.hr_reserves.assign(num_categories + 1, std::vector<int>(num_traits, 0));
    for (const auto& [vertical, row] : job_data.hr_reserves) {
      const int ordinal =
          vertical == kOpenToken ? 0 : inst.category_by_id_.at(vertical) + 1;
      for (const auto& [trait, count] : row) {
        job.hr_reserves[ordinal][inst.trait_by_id_.at(trait)] = static_cast<int>(count);
      }
    }
    inst.job_by_id_.emplace(job.id, static_cast<int>(inst.jobs_.size()));
    inst.jobs_.push_back(std::move(job));
  }

  inst.individuals_.reserve(data.individuals.size());
  for (const auto& ind_data : data.individuals) {
    Individual ind;
    ind.id = ind_data.id;
    if (ind_data.category.has_value()) {
      ind.category = inst.category_by_id_.at(*ind_data.category);
    }
    ind.has_trait.assign(num_traits, 0);
    for (const auto& trait : ind_data.traits) {
      ind.has_trait[inst.trait_by_id_.at(trait)] = 1;
    }
    for (int t = 0; t < num_traits; ++t) {
      if (ind.has_trait[t]) ind.traits.push_back(t);
    }
    ind.merit.assign(inst.jobs_.size(), 0.0);
    for (std::size_t j = 0; j < inst.jobs_.size(); ++j) {
      ind.merit[j] = ind_data.merit.at(inst.jobs_[j].id);
    }
    for (const auto& job : ind_data.preferences) {
      ind.preferences.push_back(inst.job_by_id_.at(job));
    }
    inst.individual_by_id_.emplace(ind.id, static_cast<int>(inst.individuals_.size()));
    inst.individuals_.push_back(std::move(ind));
  }

  inst.pref_rank_.assign(inst.individuals_.size(),
                         std::vector<int>(inst.jobs_.size(), kUnacceptable));
  for (std::size_t i = 0; i < inst.individuals_.size(); ++i) {
    const auto& prefs = inst.individuals_[i].preferences;
    for (std::size_t rank = 0; rank < prefs.size(); ++rank) {
      inst.pref_rank_[i][prefs[rank]] = static_cast<int>(rank);
    }
  }

  return inst;
}

void Instance::rebuild_lookups() {
  category_by_id_.clear();
  trait_by_id_.clear();
  for (std::size_t c = 0; c < categories_.size(); ++c) {
    category_by_id_.emplace(categories_[c], static_cast<int>(c));
  }
  for (std::size_t t = 0; t < traits_.size(); ++t) {
    trait_by_id_.emplace(traits_[t], static_cast<int>(t));
  }
}

std::optional<int> Instance::job_index(const std::string& id) const {
  auto it = job_by_id_.find(id);
  if (it == job_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Instance::individual_index(const std::string& id) const {
  auto it = individual_by_id_.find(id);
  if (it == individual_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Instance::category_index(const std::string& id) const {
  auto it = category_by_id_.find(id);
  if (it == category_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Instance::trait_index(const std::string& id) const {
  auto it = trait_by_id_.find(id);
  if (it == trait_by_id_.end()) return std::nullopt;
  return it->second;
}

std::string Instance::vertical_id(VerticalCategory v) const {
  return v.is_open() ? kOpenToken : categories_[v.category_index()];
}

std::optional<VerticalCategory> Instance::vertical_from_id(const std::string& id) const {
  if (id == kOpenToken) return VerticalCategory::open();
  if (auto c = category_index(id)) return VerticalCategory::reserved(*c);
  return std::nullopt;
}

InstanceData Instance::to_data() const {
  InstanceData data;
  data.categories = categories_;
  data.traits = traits_;
  for (const auto& job : jobs_) {
    InstanceData::Job jd;
    jd.id = job.id;
    jd.capacity = job.capacity;
    for (int c = 0; c < num_categories(); ++c) {
      if (job.vr_reserves[c] > 0) jd.vr_reserves[categories_[c]] = job.vr_reserves[c];
    }
    for (int ordinal = 0; ordinal < num_verticals(); ++ordinal) {
      const auto& row = job.hr_reserves[ordinal];
      std::map<std::string, long long> out_row;
      for (int t = 0; t < num_traits(); ++t) {
        if (row[t] > 0) out_row[traits_[t]] = row[t];
      }
      if (!out_row.empty()) {
        jd.hr_reserves[vertical_id(VerticalCategory::from_ordinal(ordinal))] = std::move(out_row);
      }
    }
    data.jobs.push_back(std::move(jd));
  }
  for (const auto& ind : individuals_) {
    InstanceData::Individual id;
    id.id = ind.id;
    if (ind.category.has_value()) id.category = categories_[*ind.category];
    for (int t : ind.traits) id.traits.push_back(traits_[t]);
    for (int j = 0; j < num_jobs(); ++j) id.merit[jobs_[j].id] = ind.merit[j];
    for (int j : ind.preferences) id.preferences.push_back(jobs_[j].id);
    data.individuals.push_back(std::move(id));
  }
  return data;
}

Instance Instance::with_preferences(int individual, const std::vector<int>& preferences) const {
  Instance copy = *this;
  copy.individuals_[individual].preferences = preferences;
  auto& ranks = copy.pref_rank_[individual];
  std::fill(ranks.begin(), ranks.end(), kUnacceptable);
  for (std::size_t rank = 0; rank < preferences.size(); ++rank) {
    ranks[preferences[rank]] = static_cast<int>(rank);
  }
  return copy;
}

std::optional<std::vector<int>> common_merit_order(const Instance& instance) {
  std::vector<int> order(instance.num_individuals());
  for (int i = 0; i < instance.num_individuals(); ++i) order[i] = i;
  if (instance.num_jobs() == 0) return order;

  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.merit(a, 0) > instance.merit(b, 0);
  });
  for (int j = 1; j < instance.num_jobs(); ++j) {
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (instance.merit(order[k - 1], j) <= instance.merit(order[k], j)) {
        return std::nullopt;
      }
    }
  }
  return order;
}

}  // namespace reserve_match
