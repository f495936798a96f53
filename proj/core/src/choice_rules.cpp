#include "reserve_match/choice_rules.hpp"

#include <algorithm>
#include <stdexcept>

namespace reserve_match {

bool SingleChoice::contains(int individual) const {
  return std::binary_search(chosen.begin(), chosen.end(), individual);
}

std::vector<int> ChoiceResult::aggregate() const {
  std::vector<int> all;
  for (const auto& single : per_vertical_) {
    all.insert(all.end(), single.chosen.begin(), single.chosen.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

int ChoiceResult::total() const {
  int total = 0;
  for (const auto& single : per_vertical_) total += static_cast<int>(single.chosen.size());
  return total;
}

namespace {

// Shared core of the plain and boosted variants; eligibility is the caller's
// responsibility and `score` may differ from the stored merit.
template <class ScoreFn>
SingleChoice mh_core(const Instance& instance, int job, VerticalCategory v,
                     std::span<const int> applicants, ScoreFn&& score) {
  std::vector<int> by_merit(applicants.begin(), applicants.end());
  std::sort(by_merit.begin(), by_merit.end());
  by_merit.erase(std::unique(by_merit.begin(), by_merit.end()), by_merit.end());
  std::stable_sort(by_merit.begin(), by_merit.end(),
                   [&](int a, int b) { return score(a) > score(b); });

  const int positions = instance.job(job).reserve(v);
  SingleChoice result;
  std::vector<char> taken(instance.num_individuals(), 0);

  // Step 1: greedy HR phase over the transversal matroid rank.
  HrMatcher matcher(instance, job, v);
  int chosen_count = 0;
  while (chosen_count < positions && !matcher.saturated()) {
    bool picked = false;
    for (int i : by_merit) {
      if (taken[i]) continue;
      if (matcher.try_add(i)) {
        taken[i] = 1;
        ++chosen_count;
        result.picks.push_back(ChoicePick{i, true, matcher.count()});
        picked = true;
        break;
      }
    }
    if (!picked) break;
  }

  // Step 2: fill unfilled positions by merit alone.
  for (int i : by_merit) {
    if (chosen_count == positions) break;
    if (taken[i]) continue;
    taken[i] = 1;
    ++chosen_count;
    result.picks.push_back(ChoicePick{i, false, 0});
  }

  result.chosen.reserve(result.picks.size());
  for (const auto& pick : result.picks) result.chosen.push_back(pick.individual);
  std::sort(result.chosen.begin(), result.chosen.end());
  return result;
}

}  // namespace

SingleChoice mh_choose(const Instance& instance, int job, VerticalCategory v,
                       std::span<const int> applicants) {
  for (int i : applicants) {
    if (!instance.eligible(i, v)) {
      throw IneligibleIndividualError("individual '" + instance.individual(i).id +
                                      "' applied to category-'" + instance.vertical_id(v) +
                                      "' positions without being eligible");
    }
  }
  return mh_core(instance, job, v, applicants,
                 [&](int i) { return instance.merit(i, job); });
}

ChoiceResult two_smh_choose(const Instance& instance, int job, std::span<const int> applicants) {
  ChoiceResult result(instance.num_verticals());
  result.at(VerticalCategory::open()) =
      mh_choose(instance, job, VerticalCategory::open(), applicants);

  const auto& open_choice = result.at(VerticalCategory::open());
  std::vector<int> remaining;
  for (int i : applicants) {
    if (!open_choice.contains(i)) remaining.push_back(i);
  }

  for (int c = 0; c < instance.num_categories(); ++c) {
    const auto v = VerticalCategory::reserved(c);
    std::vector<int> members;
    for (int i : remaining) {
      if (instance.eligible(i, v)) members.push_back(i);
    }
    result.at(v) = mh_choose(instance, job, v, members);
  }
  return result;
}

std::vector<int> aggregate_choose(const Instance& instance, int job,
                                  std::span<const int> applicants) {
  return two_smh_choose(instance, job, applicants).aggregate();
}

void validate_boost_config(const Instance& instance, const BoostConfig& config) {
  if (config.boosted_category < 0 || config.boosted_category >= instance.num_categories()) {
    throw std::invalid_argument("boosted category index out of range");
  }
  if (config.boost < 0) {
    throw std::invalid_argument("merit boost must be non-negative");
  }
  std::vector<char> seen(instance.num_categories(), 0);
  for (int c : config.sequence) {
    if (c < 0 || c >= instance.num_categories() || seen[c]) {
      throw std::invalid_argument("boost sequence must be a permutation of the VR categories");
    }
    seen[c] = 1;
  }
  if (static_cast<int>(config.sequence.size()) != instance.num_categories()) {
    throw std::invalid_argument("boost sequence must list every VR category exactly once");
  }
}

ChoiceResult two_smh_boost_choose(const Instance& instance, int job,
                                  std::span<const int> applicants, const BoostConfig& config) {
  validate_boost_config(instance, config);

  ChoiceResult result(instance.num_verticals());
  result.at(VerticalCategory::open()) =
      mh_choose(instance, job, VerticalCategory::open(), applicants);

  std::vector<int> remaining;
  for (int i : applicants) {
    if (!result.at(VerticalCategory::open()).contains(i)) remaining.push_back(i);
  }

  for (int c : config.sequence) {
    const auto v = VerticalCategory::reserved(c);
    SingleChoice choice;
    if (c == config.boosted_category) {
      // Soft reserve: every remaining applicant competes, members boosted.
      auto boosted_score = [&](int i) {
        const double base = instance.merit(i, job);
        return instance.individual(i).category == c ? base + config.boost : base;
      };
      std::vector<double> scores;
      scores.reserve(remaining.size());
      for (int i : remaining) scores.push_back(boosted_score(i));
      std::sort(scores.begin(), scores.end());
      if (std::adjacent_find(scores.begin(), scores.end()) != scores.end()) {
        throw TiedMeritAfterBoostError("boosting category '" +
                                       instance.categories()[c] + "' by " +
                                       std::to_string(config.boost) +
                                       " creates tied merit scores at job '" +
                                       instance.job(job).id + "'");
      }
      choice = mh_core(instance, job, v, remaining, boosted_score);
    } else {
      std::vector<int> members;
      for (int i : remaining) {
        if (instance.eligible(i, v)) members.push_back(i);
      }
      choice = mh_choose(instance, job, v, members);
    }
    std::erase_if(remaining, [&](int i) { return choice.contains(i); });
    result.at(v) = std::move(choice);
  }
  return result;
}

}  // namespace reserve_match
