#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reserve_match/instance.hpp"

namespace reserve_match::testing {

// Small fluent builder so test instances read like the tables they came from.
class InstanceBuilder {
 public:
  InstanceBuilder& categories(std::vector<std::string> ids) {
    data_.categories = std::move(ids);
    return *this;
  }
  InstanceBuilder& traits(std::vector<std::string> ids) {
    data_.traits = std::move(ids);
    return *this;
  }
  InstanceBuilder& job(std::string id, int capacity,
                       std::map<std::string, long long> vr = {},
                       std::map<std::string, std::map<std::string, long long>> hr = {}) {
    InstanceData::Job job;
    job.id = std::move(id);
    job.capacity = capacity;
    job.vr_reserves = std::move(vr);
    job.hr_reserves = std::move(hr);
    data_.jobs.push_back(std::move(job));
    return *this;
  }
  InstanceBuilder& individual(std::string id, std::optional<std::string> category,
                              std::vector<std::string> traits,
                              std::map<std::string, double> merit,
                              std::vector<std::string> preferences) {
    InstanceData::Individual ind;
    ind.id = std::move(id);
    ind.category = std::move(category);
    ind.traits = std::move(traits);
    ind.merit = std::move(merit);
    ind.preferences = std::move(preferences);
    data_.individuals.push_back(std::move(ind));
    return *this;
  }

  const InstanceData& data() const { return data_; }
  Instance build(TieBreak tie_break = TieBreak::reject) const {
    return Instance::compile(data_, tie_break);
  }

 private:
  InstanceData data_;
};

// Two jobs x, y with one open position each; x's position is HR-protected
// for t1 and y's for t2. a carries t1 and wants y first; b carries t2 and
// wants x first. a out-merits b everywhere. Two assignments satisfy all five
// axioms here and one of them dominates the other.
inline Instance two_individual_instance() {
  return InstanceBuilder()
      .traits({"t1", "t2"})
      .job("x", 1, {}, {{"o", {{"t1", 1}}}})
      .job("y", 1, {}, {{"o", {{"t2", 1}}}})
      .individual("a", std::nullopt, {"t1"}, {{"x", 3}, {"y", 3}}, {"y", "x"})
      .individual("b", std::nullopt, {"t2"}, {{"x", 2}, {"y", 2}}, {"x", "y"})
      .build();
}

// Same two jobs plus c, a second t2-carrier below b in merit. The HR floor at
// y now pins a to x: exactly one assignment satisfies all five axioms, and it
// is Pareto dominated by the swap.
inline Instance three_individual_instance() {
  return InstanceBuilder()
      .traits({"t1", "t2"})
      .job("x", 1, {}, {{"o", {{"t1", 1}}}})
      .job("y", 1, {}, {{"o", {{"t2", 1}}}})
      .individual("a", std::nullopt, {"t1"}, {{"x", 3}, {"y", 3}}, {"y", "x"})
      .individual("b", std::nullopt, {"t2"}, {{"x", 2}, {"y", 2}}, {"x", "y"})
      .individual("c", std::nullopt, {"t2"}, {{"x", 1}, {"y", 1}}, {"x", "y"})
      .build();
}

// Three jobs with one open seat each plus one category-c seat at x; five
// candidates with identical preferences x > y > z and a common merit order
// a1 > b1 > a2 > b2 > a3. The civil-services MRC mechanism mistreats a2 here.
inline Instance civil_services_instance() {
  return InstanceBuilder()
      .categories({"c"})
      .job("x", 2, {{"c", 1}})
      .job("y", 1)
      .job("z", 1)
      .individual("a1", std::nullopt, {}, {{"x", 5}, {"y", 5}, {"z", 5}}, {"x", "y", "z"})
      .individual("a2", std::nullopt, {}, {{"x", 3}, {"y", 3}, {"z", 3}}, {"x", "y", "z"})
      .individual("a3", std::nullopt, {}, {{"x", 1}, {"y", 1}, {"z", 1}}, {"x", "y", "z"})
      .individual("b1", {"c"}, {}, {{"x", 4}, {"y", 4}, {"z", 4}}, {"x", "y", "z"})
      .individual("b2", {"c"}, {}, {{"x", 2}, {"y", 2}, {"z", 2}}, {"x", "y", "z"})
      .build();
}

// Two colleges: x with two open and two category-c seats, y with one open
// seat. Merit a1 > a2 > b1 > b2 > b3; b1 prefers x, b2 and b3 prefer y. The
// medical-college displacement rule mistreats b2 here.
inline Instance medical_college_instance() {
  return InstanceBuilder()
      .categories({"c"})
      .job("x", 4, {{"c", 2}})
      .job("y", 1)
      .individual("a1", std::nullopt, {}, {{"x", 5}, {"y", 5}}, {"x", "y"})
      .individual("a2", std::nullopt, {}, {{"x", 4}, {"y", 4}}, {"x", "y"})
      .individual("b1", {"c"}, {}, {{"x", 3}, {"y", 3}}, {"x", "y"})
      .individual("b2", {"c"}, {}, {{"x", 2}, {"y", 2}}, {"y", "x"})
      .individual("b3", {"c"}, {}, {{"x", 1}, {"y", 1}}, {"y", "x"})
      .build();
}

// One category-c seat at x, one open seat at y, both candidates in c and
// preferring x. The 1990 two-phase rule strands the stronger candidate on
// the open seat, and a truncated report wins her the reserved seat instead.
inline Instance two_phase_trap_instance() {
  return InstanceBuilder()
      .categories({"c"})
      .job("x", 1, {{"c", 1}})
      .job("y", 1)
      .individual("b1", {"c"}, {}, {{"x", 2}, {"y", 2}}, {"x", "y"})
      .individual("b2", {"c"}, {}, {{"x", 1}, {"y", 1}}, {"x", "y"})
      .build();
}

// One job, two category-c candidates, one open and one reserved seat: the
// stronger candidate must take the open seat, the weaker the reserved one.
inline Instance over_and_above_instance() {
  return InstanceBuilder()
      .categories({"c"})
      .job("w", 2, {{"c", 1}})
      .individual("b1", {"c"}, {}, {{"w", 2}}, {"w"})
      .individual("b2", {"c"}, {}, {{"w", 1}}, {"w"})
      .build();
}

}  // namespace reserve_match::testing
