#include <benchmark/benchmark.h>

#include "reserve_match/choice_rules.hpp"
#include "reserve_match/generator.hpp"
#include "reserve_match/hr_matching.hpp"
#include "reserve_match/mechanisms.hpp"
#include "reserve_match/oracle.hpp"

using namespace reserve_match;

namespace {

Instance sized_instance(int jobs, int individuals) {
  GenProfile profile;
  profile.num_jobs = jobs;
  profile.num_individuals = individuals;
  profile.num_categories = 3;
  profile.num_traits = 3;
  profile.capacity_min = 2;
  profile.capacity_max = individuals / std::max(jobs, 1) + 2;
  profile.reserve_density = 0.5;
  profile.hr_density = 0.5;
  profile.trait_density = 0.3;
  return generate(7, profile);
}

void BM_honored_count(benchmark::State& state) {
  const auto instance = sized_instance(1, static_cast<int>(state.range(0)));
  std::vector<int> everyone(instance.num_individuals());
  for (int i = 0; i < instance.num_individuals(); ++i) everyone[i] = i;
  for (auto _ : state) {
    benchmark::DoNotOptimize(honored_count(instance, 0, VerticalCategory::open(), everyone));
  }
}
BENCHMARK(BM_honored_count)->Arg(16)->Arg(64)->Arg(256);

void BM_two_smh_choose(benchmark::State& state) {
  const auto instance = sized_instance(1, static_cast<int>(state.range(0)));
  std::vector<int> everyone(instance.num_individuals());
  for (int i = 0; i < instance.num_individuals(); ++i) everyone[i] = i;
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_smh_choose(instance, 0, everyone));
  }
}
BENCHMARK(BM_two_smh_choose)->Arg(16)->Arg(64)->Arg(256);

void BM_run_2smh_da(benchmark::State& state) {
  const auto instance =
      sized_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_2smh_da(instance));
  }
}
BENCHMARK(BM_run_2smh_da)->Args({4, 64})->Args({8, 256})->Args({16, 1024});

void BM_enumerate_assignments(benchmark::State& state) {
  GenProfile profile;
  profile.num_jobs = 2;
  profile.num_individuals = static_cast<int>(state.range(0));
  profile.num_categories = 1;
  profile.num_traits = 1;
  const auto instance = generate(11, profile);
  for (auto _ : state) {
    long long count =
        enumerate_assignments(instance, OracleLimits{}, [](const Assignment&) { return true; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_enumerate_assignments)->Arg(4)->Arg(5)->Arg(6);

void BM_axiom_satisfying_set(benchmark::State& state) {
  GenProfile profile;
  profile.num_jobs = 2;
  profile.num_individuals = static_cast<int>(state.range(0));
  profile.num_categories = 1;
  profile.num_traits = 2;
  const auto instance = generate(13, profile);
  for (auto _ : state) {
    benchmark::DoNotOptimize(axiom_satisfying_set(instance));
  }
}
BENCHMARK(BM_axiom_satisfying_set)->Arg(4)->Arg(5)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
