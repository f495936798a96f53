#include "reserve_match/generator.hpp"

#include <algorithm>
#include <cmath>

#include "reserve_match/rng.hpp"

namespace reserve_match {

namespace {

void check_profile(const GenProfile& profile) {
  auto fail = [](const std::string& message) { throw InfeasibleProfileError(message); };
  if (profile.num_jobs < 0 || profile.num_individuals < 0 || profile.num_categories < 0 ||
      profile.num_traits < 0) {
    fail("counts must be non-negative");
  }
  if (profile.capacity_min < 0 || profile.capacity_max < profile.capacity_min) {
    fail("capacity range is empty or negative");
  }
  for (double d : {profile.reserve_density, profile.hr_density, profile.trait_density,
                   profile.acceptable_prob}) {
    if (d < 0.0 || d > 1.0) fail("densities and probabilities must lie in [0, 1]");
  }
  double share_total = 0.0;
  for (const auto& [name, share] : profile.category_shares) {
    if (share < 0.0) fail("category share for '" + name + "' is negative");
    if (name == kOpenToken) fail("'o' is the open category, not a VR category");
    share_total += share;
  }
  if (share_total > 1.0 + 1e-9) fail("category shares sum to more than 1");
}

// Largest-remainder apportionment of `total` individuals to the shares.
std::vector<int> category_counts(const std::vector<double>& shares, int total) {
  std::vector<int> counts(shares.size(), 0);
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  double share_total = 0.0;
  for (std::size_t c = 0; c < shares.size(); ++c) {
    const double exact = shares[c] * total;
    counts[c] = static_cast<int>(std::floor(exact));
    assigned += counts[c];
    remainders.emplace_back(exact - counts[c], static_cast<int>(c));
    share_total += shares[c];
  }
  int target = static_cast<int>(std::lround(share_total * total));
  target = std::min(target, total);
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (const auto& [rem, c] : remainders) {
    if (assigned >= target) break;
    ++counts[c];
    ++assigned;
  }
  return counts;
}

}  // namespace

Instance generate(std::uint64_t seed, const GenProfile& profile) {
  check_profile(profile);
  Rng rng(seed);

  InstanceData data;

  std::vector<double> shares;
  if (!profile.category_shares.empty()) {
    for (const auto& [name, share] : profile.category_shares) {
      data.categories.push_back(name);
      shares.push_back(share);
    }
  } else {
    for (int c = 0; c < profile.num_categories; ++c) {
      data.categories.push_back("c" + std::to_string(c + 1));
      shares.push_back(profile.num_categories > 0 ? 0.6 / profile.num_categories : 0.0);
    }
  }
  const int num_categories = static_cast<int>(data.categories.size());

  for (int t = 0; t < profile.num_traits; ++t) {
    data.traits.push_back("t" + std::to_string(t + 1));
  }

  // Jobs: capacity, a VR split of ~reserve_density * capacity, then HR rows
  // inside every vertical with seats.
  for (int j = 0; j < profile.num_jobs; ++j) {
    InstanceData::Job job;
    job.id = "j" + std::to_string(j + 1);
    const int capacity = rng.range(profile.capacity_min, profile.capacity_max);
    job.capacity = capacity;

    std::vector<int> vr(num_categories, 0);
    if (num_categories > 0) {
      const int vr_total = static_cast<int>(std::floor(profile.reserve_density * capacity));
      for (int unit = 0; unit < vr_total; ++unit) ++vr[rng.below(num_categories)];
    }
    for (int c = 0; c < num_categories; ++c) {
      if (vr[c] > 0) job.vr_reserves[data.categories[c]] = vr[c];
    }

    int vr_total = 0;
    for (int r : vr) vr_total += r;
    auto fill_hr = [&](const std::string& vertical, int seats) {
      if (seats <= 0 || profile.num_traits == 0) return;
      const int hr_total = static_cast<int>(std::floor(profile.hr_density * seats));
      if (hr_total == 0) return;
      std::vector<int> row(profile.num_traits, 0);
      for (int unit = 0; unit < hr_total; ++unit) ++row[rng.below(profile.num_traits)];
      std::map<std::string, long long> out;
      for (int t = 0; t < profile.num_traits; ++t) {
        if (row[t] > 0) out[data.traits[t]] = row[t];
      }
      if (!out.empty()) job.hr_reserves[vertical] = std::move(out);
    };
    fill_hr(kOpenToken, capacity - vr_total);
    for (int c = 0; c < num_categories; ++c) fill_hr(data.categories[c], vr[c]);

    data.jobs.push_back(std::move(job));
  }

  // Individuals: shuffled category blocks, independent traits, rank-based
  // distinct merit scores, preferences over a random acceptable subset.
  const int n = profile.num_individuals;
  std::vector<std::optional<int>> category_of(n);
  {
    const auto counts = category_counts(shares, n);
    std::vector<int> ordering(n);
    for (int i = 0; i < n; ++i) ordering[i] = i;
    rng.shuffle(ordering);
    int cursor = 0;
    for (int c = 0; c < num_categories; ++c) {
      for (int k = 0; k < counts[c]; ++k) category_of[ordering[cursor++]] = c;
    }
  }

  std::vector<std::vector<double>> merit(n, std::vector<double>(profile.num_jobs, 0.0));
  {
    std::vector<int> ranking(n);
    for (int i = 0; i < n; ++i) ranking[i] = i;
    for (int j = 0; j < profile.num_jobs; ++j) {
      if (j == 0 || !profile.common_merit) rng.shuffle(ranking);
      for (int pos = 0; pos < n; ++pos) {
        merit[ranking[pos]][j] = 100.0 * static_cast<double>(n - pos) / std::max(1, n);
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    InstanceData::Individual ind;
    ind.id = "i" + std::to_string(i + 1);
    if (category_of[i].has_value()) ind.category = data.categories[*category_of[i]];
    for (int t = 0; t < profile.num_traits; ++t) {
      if (rng.bernoulli(profile.trait_density)) ind.traits.push_back(data.traits[t]);
    }
    for (int j = 0; j < profile.num_jobs; ++j) ind.merit[data.jobs[j].id] = merit[i][j];
    std::vector<int> acceptable;
    for (int j = 0; j < profile.num_jobs; ++j) {
      if (rng.bernoulli(profile.acceptable_prob)) acceptable.push_back(j);
    }
    rng.shuffle(acceptable);
    for (int j : acceptable) ind.preferences.push_back(data.jobs[j].id);
    data.individuals.push_back(std::move(ind));
  }

  return Instance::compile(data);
}

}  // namespace reserve_match
