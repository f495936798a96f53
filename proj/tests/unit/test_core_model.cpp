#include <doctest.h>

#include <algorithm>

#include "reserve_match/instance.hpp"
#include "reserve_match/io.hpp"
#include "support/fixtures.hpp"

using namespace reserve_match;
using namespace reserve_match::testing;

namespace {

bool has_code(const std::vector<ValidationIssue>& issues, ValidationCode code) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& issue) { return issue.code == code; });
}

}  // namespace

TEST_CASE("hr reserves above the category's positions are rejected") {
  // capacity 1 fully VR-reserved leaves r^o = 0, so one open HR slot is too many
  auto builder = InstanceBuilder()
                     .categories({"c"})
                     .traits({"t"})
                     .job("x", 1, {{"c", 1}}, {{"o", {{"t", 1}}}});
  const auto issues = validate(builder.data());
  CHECK(has_code(issues, ValidationCode::hr_exceeds_vr));
}

TEST_CASE("tied merit scores are rejected by default") {
  auto builder = InstanceBuilder()
                     .job("x", 1)
                     .individual("a", std::nullopt, {}, {{"x", 5.0}}, {"x"})
                     .individual("b", std::nullopt, {}, {{"x", 5.0}}, {"x"});
  const auto issues = validate(builder.data());
  REQUIRE(has_code(issues, ValidationCode::tied_merit_scores));
  CHECK_THROWS_AS(builder.build(), ValidationError);
}

TEST_CASE("tie-break by id perturbs deterministically and marks the instance") {
  auto builder = InstanceBuilder()
                     .job("x", 1)
                     .individual("a", std::nullopt, {}, {{"x", 5.0}}, {"x"})
                     .individual("b", std::nullopt, {}, {{"x", 5.0}}, {"x"})
                     .individual("z", std::nullopt, {}, {{"x", 4.0}}, {"x"});
  const auto instance = builder.build(TieBreak::by_id);
  CHECK(instance.tie_broken());
  // lexicographically smallest id keeps the score, later ids drop below it
  // but stay above the next distinct score
  CHECK(instance.merit(0, 0) == 5.0);
  CHECK(instance.merit(1, 0) < 5.0);
  CHECK(instance.merit(1, 0) > 4.0);
  const auto again = builder.build(TieBreak::by_id);
  CHECK(again.merit(1, 0) == instance.merit(1, 0));
}

TEST_CASE("the three-individual example instance is valid") {
  CHECK_NOTHROW(three_individual_instance());
}

TEST_CASE("validation reports every violation, not just the first") {
  auto builder = InstanceBuilder()
                     .categories({"c", "c"})  // duplicate
                     .job("x", 2, {{"sc", 3}})  // unknown category, over capacity
                     .individual("a", {"nope"}, {"ghost"}, {}, {"x", "x", "y"});
  const auto issues = validate(builder.data());
  CHECK(has_code(issues, ValidationCode::duplicate_id));
  CHECK(has_code(issues, ValidationCode::unknown_reference));
  CHECK(has_code(issues, ValidationCode::reserve_exceeds_capacity));
  CHECK(has_code(issues, ValidationCode::merit_missing));
  CHECK(issues.size() >= 7);
}

TEST_CASE("'o' cannot be declared as a VR category") {
  auto builder = InstanceBuilder().categories({"o"}).job("x", 1);
  CHECK(has_code(validate(builder.data()), ValidationCode::reserved_category_token));
}

TEST_CASE("an empty preference list is allowed") {
  auto instance = InstanceBuilder()
                      .job("x", 1)
                      .individual("a", std::nullopt, {}, {{"x", 1.0}}, {})
                      .build();
  CHECK(instance.individual(0).preferences.empty());
}

TEST_CASE("validation is idempotent on valid instances") {
  const auto instance = three_individual_instance();
  const auto data = instance.to_data();
  CHECK(validate(data).empty());
  const auto again = Instance::compile(data);
  CHECK(instance_to_json(again) == instance_to_json(instance));
}

TEST_CASE("comparison is indifferent across categories of one job") {
  const auto instance = over_and_above_instance();
  const int b1 = *instance.individual_index("b1");
  const int w = *instance.job_index("w");

  Assignment on_open(instance.num_individuals());
  on_open.at(b1) = Placement{w, VerticalCategory::open()};
  Assignment on_reserved(instance.num_individuals());
  on_reserved.at(b1) = Placement{w, VerticalCategory::reserved(0)};

  CHECK(compare_for_individual(instance, b1, on_open, on_reserved) == Comparison::indifferent);
}

TEST_CASE("comparison follows the preference list and treats unassigned as the outside option") {
  const auto instance = two_individual_instance();
  const int a = *instance.individual_index("a");
  const int x = *instance.job_index("x");
  const int y = *instance.job_index("y");

  Assignment at_y(instance.num_individuals());
  at_y.at(a) = Placement{y, VerticalCategory::open()};
  Assignment at_x(instance.num_individuals());
  at_x.at(a) = Placement{x, VerticalCategory::open()};
  Assignment unassigned(instance.num_individuals());

  CHECK(compare_for_individual(instance, a, at_y, at_x) == Comparison::a_better);
  CHECK(compare_for_individual(instance, a, unassigned, at_x) == Comparison::b_better);
}

TEST_CASE("induced job matching forgets categories and keeps the unassigned") {
  const auto instance = over_and_above_instance();
  Assignment assignment(instance.num_individuals());
  assignment.at(0) = Placement{0, VerticalCategory::open()};
  assignment.at(1) = Placement{0, VerticalCategory::reserved(0)};

  const auto matching = induce_job_matching(assignment);
  CHECK(matching.job_by_individual[0] == 0);
  CHECK(matching.job_by_individual[1] == 0);

  const auto empty = induce_job_matching(Assignment(instance.num_individuals()));
  CHECK(!empty.job_by_individual[0].has_value());
  CHECK(!empty.job_by_individual[1].has_value());
}

TEST_CASE("induced job matching preserves per-job counts") {
  const auto instance = civil_services_instance();
  Assignment assignment(instance.num_individuals());
  assignment.at(*instance.individual_index("a1")) = Placement{0, VerticalCategory::open()};
  assignment.at(*instance.individual_index("b1")) = Placement{0, VerticalCategory::reserved(0)};
  assignment.at(*instance.individual_index("a2")) = Placement{2, VerticalCategory::open()};

  const auto matching = induce_job_matching(assignment);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    int matched = 0;
    for (const auto& job : matching.job_by_individual) {
      if (job == j) ++matched;
    }
    CHECK(matched == static_cast<int>(assignment.holders(j).size()));
  }
}

TEST_CASE("assignment validation enforces eligibility and capacity") {
  const auto instance = civil_services_instance();
  Assignment assignment(instance.num_individuals());
  // a1 is general, so a category-c seat is off limits
  assignment.at(*instance.individual_index("a1")) = Placement{0, VerticalCategory::reserved(0)};
  // y has a single open seat; b1 and b2 both on it exceed the capacity
  assignment.at(*instance.individual_index("b1")) = Placement{1, VerticalCategory::open()};
  assignment.at(*instance.individual_index("b2")) = Placement{1, VerticalCategory::open()};

  const auto issues = validate_assignment(instance, assignment);
  CHECK(has_code(issues, ValidationCode::ineligible_individual));
  CHECK(has_code(issues, ValidationCode::capacity_exceeded));
}

TEST_CASE("instance json round-trips through the canonical serialization") {
  const auto instance = civil_services_instance();
  const auto text = instance_to_json(instance);
  const auto reparsed = load_instance(text);
  CHECK(instance_to_json(reparsed) == text);
}

TEST_CASE("the documented file format parses as-is") {
  const char* text = R"({ "jobs": [ { "id": "x", "capacity": 2, "vr_reserves": {"SC": 1},
                "hr_reserves": { "o": {"women": 1}, "SC": {"pwd": 1} } } ],
    "categories": ["SC","ST","OBC"],
    "traits": ["women","pwd"],
    "individuals": [ { "id": "a", "category": null, "traits": ["women"],
                       "merit": {"x": 95.5}, "preferences": ["x"] } ] })";
  const auto instance = load_instance(text);
  CHECK(instance.num_jobs() == 1);
  CHECK(instance.num_categories() == 3);
  CHECK(instance.job(0).open_capacity == 1);
  CHECK(instance.job(0).vr_reserves[*instance.category_index("SC")] == 1);
  CHECK(instance.job(0).hr_row(VerticalCategory::open())[*instance.trait_index("women")] == 1);
  CHECK(instance.merit(0, 0) == 95.5);
}

TEST_CASE("an instance without jobs is fine everywhere it can reach") {
  auto instance = InstanceBuilder()
                      .categories({"c"})
                      .individual("a", {"c"}, {}, {}, {})
                      .build();
  CHECK(instance.num_jobs() == 0);
  CHECK(common_merit_order(instance).has_value());
}
