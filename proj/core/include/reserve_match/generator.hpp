#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reserve_match/instance.hpp"

namespace reserve_match {

// Knobs for the deterministic instance generator. Category shares are
// population fractions; the remainder is the general category. When
// `category_shares` is empty, `num_categories` synthetic categories named
// c1, c2, ... split a 60% reserved-population share evenly.
struct GenProfile {
  int num_jobs = 3;
  int num_individuals = 6;
  int num_categories = 2;
  int num_traits = 2;
  int capacity_min = 1;
  int capacity_max = 2;
  double reserve_density = 0.4;  // fraction of each job's capacity VR-reserved
  double hr_density = 0.5;       // fraction of each vertical's seats HR-protected
  double trait_density = 0.3;    // probability an individual carries each trait
  double acceptable_prob = 0.8;  // probability a job enters a preference list
  std::vector<std::pair<std::string, double>> category_shares;
  bool common_merit = false;     // identical merit order at every job
};

// Same (seed, profile) yields the identical instance, bit for bit. Generated
// instances always pass validation: merit scores are rank-based and distinct
// by construction, and reserves are drawn within the capacity bounds. Throws
// InfeasibleProfileError on inconsistent knobs.
Instance generate(std::uint64_t seed, const GenProfile& profile);

}  // namespace reserve_match
