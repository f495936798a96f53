#include <doctest.h>

#include <cmath>

#include "reserve_match/generator.hpp"
#include "reserve_match/io.hpp"

using namespace reserve_match;

TEST_CASE("same seed and profile give the identical instance") {
  GenProfile profile;
  profile.num_jobs = 4;
  profile.num_individuals = 10;
  profile.num_categories = 3;
  profile.num_traits = 2;
  const auto first = generate(123456, profile);
  const auto second = generate(123456, profile);
  CHECK(instance_to_json(first) == instance_to_json(second));

  const auto other = generate(123457, profile);
  CHECK(instance_to_json(other) != instance_to_json(first));
}

TEST_CASE("generated instances always validate") {
  GenProfile profile;
  profile.num_jobs = 3;
  profile.num_individuals = 8;
  profile.num_categories = 2;
  profile.num_traits = 3;
  profile.reserve_density = 0.7;
  profile.hr_density = 0.9;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto instance = generate(seed, profile);
    CHECK(validate(instance.to_data()).empty());
  }
}

TEST_CASE("the common-merit flag makes every job agree") {
  GenProfile profile;
  profile.num_jobs = 4;
  profile.num_individuals = 9;
  profile.common_merit = true;
  const auto instance = generate(99, profile);
  CHECK(common_merit_order(instance).has_value());

  profile.common_merit = false;
  bool any_disagreement = false;
  for (std::uint64_t seed = 0; seed < 10 && !any_disagreement; ++seed) {
    any_disagreement = !common_merit_order(generate(seed, profile)).has_value();
  }
  CHECK(any_disagreement);
}

TEST_CASE("category counts stay within rounding of the shares") {
  GenProfile profile;
  profile.num_jobs = 2;
  profile.num_individuals = 40;
  profile.category_shares = {{"SC", 0.15}, {"ST", 0.075}, {"OBC", 0.27}, {"EWS", 0.10}};
  const auto instance = generate(2024, profile);

  REQUIRE(instance.num_categories() == 4);
  std::vector<int> counts(instance.num_categories(), 0);
  for (const auto& individual : instance.individuals()) {
    if (individual.category.has_value()) ++counts[*individual.category];
  }
  for (int c = 0; c < instance.num_categories(); ++c) {
    const double expected = profile.category_shares[c].second * profile.num_individuals;
    CHECK(std::abs(counts[c] - expected) <= 1.0);
  }
}

TEST_CASE("infeasible profiles are refused") {
  GenProfile profile;
  profile.reserve_density = 1.5;
  CHECK_THROWS_AS(generate(1, profile), InfeasibleProfileError);

  profile = GenProfile{};
  profile.capacity_min = 3;
  profile.capacity_max = 1;
  CHECK_THROWS_AS(generate(1, profile), InfeasibleProfileError);

  profile = GenProfile{};
  profile.category_shares = {{"a", 0.9}, {"b", 0.8}};
  CHECK_THROWS_AS(generate(1, profile), InfeasibleProfileError);
}

TEST_CASE("profiles round-trip through json") {
  GenProfile profile;
  profile.num_jobs = 5;
  profile.category_shares = {{"SC", 0.2}};
  profile.common_merit = true;
  const auto text = profile_to_json(profile);
  const auto parsed = parse_profile(text);
  CHECK(parsed.num_jobs == 5);
  CHECK(parsed.common_merit);
  REQUIRE(parsed.category_shares.size() == 1);
  CHECK(parsed.category_shares[0].first == "SC");
  CHECK(parsed.category_shares[0].second == 0.2);
}
