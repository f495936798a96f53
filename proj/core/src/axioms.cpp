#include "reserve_match/axioms.hpp"

#include <algorithm>

#include "reserve_match/hr_matching.hpp"

namespace reserve_match {

namespace {

// Strictly prefers `job` to her assignment under the extended preferences.
bool wants(const Instance& instance, const Assignment& assignment, int individual, int job) {
  return instance.prefers(individual, job, assignment.job_of(individual));
}

int count_honored(const Instance& instance, int job, VerticalCategory v,
                  const std::vector<int>& holders) {
  HrMatcher matcher(instance, job, v);
  for (int i : holders) matcher.try_add(i);
  return matcher.count();
}

int count_honored_plus(const Instance& instance, int job, VerticalCategory v,
                       const std::vector<int>& holders, int extra) {
  HrMatcher matcher(instance, job, v);
  for (int i : holders) matcher.try_add(i);
  matcher.try_add(extra);
  return matcher.count();
}

int count_honored_swap(const Instance& instance, int job, VerticalCategory v,
                       const std::vector<int>& holders, int removed, int added) {
  HrMatcher matcher(instance, job, v);
  for (int i : holders) {
    if (i != removed) matcher.try_add(i);
  }
  matcher.try_add(added);
  return matcher.count();
}

// Each checker is written once as a scan that feeds witnesses to `emit`;
// emit returns false to stop early (the fast conjunction path).

template <class Emit>
bool scan_individual_rationality(const Instance& instance, const Assignment& assignment,
                                 Emit&& emit) {
  for (int i = 0; i < instance.num_individuals(); ++i) {
    const auto job = assignment.job_of(i);
    if (job.has_value() && !instance.acceptable(i, *job)) {
      if (!emit(Witness(IrBreach{i}))) return false;
    }
  }
  return true;
}

template <class Emit>
bool scan_non_wastefulness(const Instance& instance, const Assignment& assignment, Emit&& emit) {
  const auto table = holders_table(instance, assignment);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      if (static_cast<int>(table[j][ordinal].size()) >= instance.job(j).reserve(v)) continue;
      for (int i = 0; i < instance.num_individuals(); ++i) {
        if (instance.eligible(i, v) && wants(instance, assignment, i, j)) {
          if (!emit(Witness(IdleSeat{j, v, i}))) return false;
        }
      }
    }
  }
  return true;
}

template <class Emit>
bool scan_max_hr_accommodation(const Instance& instance, const Assignment& assignment,
                               Emit&& emit) {
  const auto table = holders_table(instance, assignment);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      if (instance.job(j).total_hr(v) == 0) continue;  // n is identically zero
      const auto& holders = table[j][ordinal];
      const int base = count_honored(instance, j, v, holders);
      for (int i = 0; i < instance.num_individuals(); ++i) {
        if (!instance.eligible(i, v) || !wants(instance, assignment, i, j)) continue;
        if (count_honored_plus(instance, j, v, holders, i) > base) {
          if (!emit(Witness(HrDishonored{j, v, i}))) return false;
        }
      }
    }
  }
  return true;
}

template <class Emit>
bool scan_no_justified_envy(const Instance& instance, const Assignment& assignment, Emit&& emit) {
  const auto table = holders_table(instance, assignment);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      const auto& holders = table[j][ordinal];
      if (holders.empty()) continue;
      const int base = count_honored(instance, j, v, holders);
      for (int claimant = 0; claimant < instance.num_individuals(); ++claimant) {
        if (!instance.eligible(claimant, v) || !wants(instance, assignment, claimant, j)) continue;
        for (int holder : holders) {
          if (instance.merit(holder, j) > instance.merit(claimant, j)) continue;
          if (base > count_honored_swap(instance, j, v, holders, holder, claimant)) continue;
          if (!emit(Witness(EnvyPair{holder, claimant, j, v}))) return false;
        }
      }
    }
  }
  return true;
}

template <class Emit>
bool scan_vr_compliance(const Instance& instance, const Assignment& assignment, Emit&& emit) {
  const auto table = holders_table(instance, assignment);
  const auto open = VerticalCategory::open();
  for (int j = 0; j < instance.num_jobs(); ++j) {
    const auto& open_holders = table[j][open.ordinal()];
    const int open_base = count_honored(instance, j, open, open_holders);
    for (int c = 0; c < instance.num_categories(); ++c) {
      const auto& vr_holders = table[j][VerticalCategory::reserved(c).ordinal()];
      for (int holder : vr_holders) {
        // (1) every open position is filled
        if (static_cast<int>(open_holders.size()) != instance.job(j).open_capacity) {
          if (!emit(Witness(VrComplianceBreach{holder, j, c, 1}))) return false;
        }
        // (2) each open holder either out-merits her, or swapping them in
        //     would lower the honored count at open
        for (int open_holder : open_holders) {
          if (instance.merit(open_holder, j) > instance.merit(holder, j)) continue;
          if (open_base >
              count_honored_swap(instance, j, open, open_holders, open_holder, holder)) {
            continue;
          }
          if (!emit(Witness(VrComplianceBreach{holder, j, c, 2}))) return false;
          break;  // one condition-2 witness per holder
        }
        // (3) adding her to open would not raise the honored count
        if (count_honored_plus(instance, j, open, open_holders, holder) > open_base) {
          if (!emit(Witness(VrComplianceBreach{holder, j, c, 3}))) return false;
        }
      }
    }
  }
  return true;
}

bool witness_less(const Instance& instance, const Witness& a, const Witness& b);

template <class Scan>
AxiomReport run_checker(const char* axiom, const Instance& instance, Scan&& scan) {
  AxiomReport report;
  report.axiom = axiom;
  scan([&](Witness witness) {
    report.witnesses.push_back(std::move(witness));
    return true;  // collect everything
  });
  report.pass = report.witnesses.empty();
  std::sort(report.witnesses.begin(), report.witnesses.end(),
            [&](const Witness& a, const Witness& b) { return witness_less(instance, a, b); });
  return report;
}

// Stable ordering for serialized reports: lexicographic by the ids involved.
bool witness_less(const Instance& instance, const Witness& a, const Witness& b) {
  auto key = [&](const Witness& w) {
    std::vector<std::string> parts;
    std::visit(
        [&](const auto& witness) {
          using T = std::decay_t<decltype(witness)>;
          if constexpr (std::is_same_v<T, IrBreach>) {
            parts = {instance.individual(witness.individual).id};
          } else if constexpr (std::is_same_v<T, IdleSeat> || std::is_same_v<T, HrDishonored>) {
            parts = {instance.job(witness.job).id, instance.vertical_id(witness.category),
                     instance.individual(witness.individual).id};
          } else if constexpr (std::is_same_v<T, EnvyPair>) {
            parts = {instance.individual(witness.holder).id,
                     instance.individual(witness.claimant).id, instance.job(witness.job).id,
                     instance.vertical_id(witness.category)};
          } else if constexpr (std::is_same_v<T, VrComplianceBreach>) {
            parts = {instance.individual(witness.individual).id, instance.job(witness.job).id,
                     instance.categories()[witness.category], std::to_string(witness.condition)};
          } else if constexpr (std::is_same_v<T, InterSeBreach>) {
            parts = {instance.individual(witness.higher).id,
                     instance.individual(witness.lower).id, instance.job(witness.lower_job).id};
          }
        },
        w);
    return parts;
  };
  return key(a) < key(b);
}

}  // namespace

AxiomReport check_individual_rationality(const Instance& instance, const Assignment& assignment) {
  return run_checker(kAxiomIndividualRationality, instance, [&](auto&& emit) {
    scan_individual_rationality(instance, assignment, emit);
  });
}

AxiomReport check_non_wastefulness(const Instance& instance, const Assignment& assignment) {
  return run_checker(kAxiomNonWastefulness, instance, [&](auto&& emit) {
    scan_non_wastefulness(instance, assignment, emit);
  });
}

AxiomReport check_max_hr_accommodation(const Instance& instance, const Assignment& assignment) {
  return run_checker(kAxiomMaxHrAccommodation, instance, [&](auto&& emit) {
    scan_max_hr_accommodation(instance, assignment, emit);
  });
}

AxiomReport check_no_justified_envy(const Instance& instance, const Assignment& assignment) {
  return run_checker(kAxiomNoJustifiedEnvy, instance, [&](auto&& emit) {
    scan_no_justified_envy(instance, assignment, emit);
  });
}

AxiomReport check_vr_compliance(const Instance& instance, const Assignment& assignment) {
  return run_checker(kAxiomVrCompliance, instance, [&](auto&& emit) {
    scan_vr_compliance(instance, assignment, emit);
  });
}

std::vector<AxiomReport> check_all_axioms(const Instance& instance, const Assignment& assignment) {
  return {check_individual_rationality(instance, assignment),
          check_non_wastefulness(instance, assignment),
          check_max_hr_accommodation(instance, assignment),
          check_no_justified_envy(instance, assignment),
          check_vr_compliance(instance, assignment)};
}

bool satisfies_all_axioms(const Instance& instance, const Assignment& assignment) {
  auto stop = [](const Witness&) { return false; };
  return scan_individual_rationality(instance, assignment, stop) &&
         scan_non_wastefulness(instance, assignment, stop) &&
         scan_max_hr_accommodation(instance, assignment, stop) &&
         scan_no_justified_envy(instance, assignment, stop) &&
         scan_vr_compliance(instance, assignment, stop);
}

std::string to_string(ParetoVerdict verdict) {
  switch (verdict) {
    case ParetoVerdict::a_dominates: return "a-dominates";
    case ParetoVerdict::b_dominates: return "b-dominates";
    case ParetoVerdict::equal: return "equal";
    case ParetoVerdict::incomparable: return "incomparable";
  }
  return "unknown";
}

ParetoVerdict pareto_compare(const Instance& instance, const Assignment& a, const Assignment& b) {
  bool a_strict = false;
  bool b_strict = false;
  for (int i = 0; i < instance.num_individuals(); ++i) {
    switch (compare_for_individual(instance, i, a, b)) {
      case Comparison::a_better: a_strict = true; break;
      case Comparison::b_better: b_strict = true; break;
      case Comparison::indifferent: break;
    }
  }
  if (a_strict && b_strict) return ParetoVerdict::incomparable;
  if (a_strict) return ParetoVerdict::a_dominates;
  if (b_strict) return ParetoVerdict::b_dominates;
  return ParetoVerdict::equal;
}

namespace {

// Every strict ordering of every subset of {0..num_jobs-1}, the empty report
// included: sum over k of P(n, k) lists.
std::vector<std::vector<int>> all_reports(int num_jobs) {
  std::vector<std::vector<int>> reports;
  for (unsigned mask = 0; mask < (1u << num_jobs); ++mask) {
    std::vector<int> base;
    for (int j = 0; j < num_jobs; ++j) {
      if (mask & (1u << j)) base.push_back(j);
    }
    std::sort(base.begin(), base.end());
    do {
      reports.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
  }
  return reports;
}

}  // namespace

std::vector<Deviation> check_strategy_proofness(const Instance& instance,
                                                const MechanismSpec& mechanism, int max_jobs) {
  if (instance.num_jobs() > max_jobs) {
    throw ReportSpaceTooLargeError("strategy-proofness replay is exhaustive and limited to " +
                                   std::to_string(max_jobs) + " jobs; instance has " +
                                   std::to_string(instance.num_jobs()));
  }

  const Assignment truthful = run_mechanism(instance, mechanism).assignment;
  const auto reports = all_reports(instance.num_jobs());

  std::vector<Deviation> deviations;
  for (int i = 0; i < instance.num_individuals(); ++i) {
    const auto truthful_job = truthful.job_of(i);
    for (const auto& report : reports) {
      if (report == instance.individual(i).preferences) continue;
      const Instance misreported = instance.with_preferences(i, report);
      const Assignment outcome = run_mechanism(misreported, mechanism).assignment;
      const auto deviant_job = outcome.job_of(i);
      // Gains are judged by the true preferences.
      if (instance.prefers(i, deviant_job, truthful_job)) {
        deviations.push_back(Deviation{i, report, truthful_job, deviant_job});
      }
    }
  }
  return deviations;
}

AxiomReport check_inter_se_merit(const Instance& instance, const Assignment& assignment) {
  const auto order = common_merit_order(instance);
  if (!order.has_value()) {
    throw NoCommonMeritRankingError(
        "inter se merit is defined against a common merit ranking");
  }

  return run_checker(kAxiomInterSeMerit, instance, [&](auto&& emit) {
    const auto& by_merit = *order;
    for (std::size_t hi = 0; hi < by_merit.size(); ++hi) {
      for (std::size_t lo = hi + 1; lo < by_merit.size(); ++lo) {
        const int higher = by_merit[hi];
        const int lower = by_merit[lo];
        if (instance.individual(higher).category != instance.individual(lower).category) continue;
        const auto lower_job = assignment.job_of(lower);
        if (!lower_job.has_value()) continue;
        if (instance.prefers(higher, lower_job, assignment.job_of(higher))) {
          if (!emit(Witness(InterSeBreach{higher, lower, *lower_job}))) return false;
        }
      }
    }
    return true;
  });
}

std::vector<CutoffEntry> cutoff_scores(const Instance& instance, const Assignment& assignment) {
  const auto table = holders_table(instance, assignment);
  std::vector<CutoffEntry> entries;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      if (instance.job(j).reserve(v) == 0) continue;
      CutoffEntry entry{j, v, std::nullopt};
      for (int holder : table[j][ordinal]) {
        const double score = instance.merit(holder, j);
        if (!entry.cutoff.has_value() || score < *entry.cutoff) entry.cutoff = score;
      }
      entries.push_back(entry);
    }
  }
  return entries;
}

}  // namespace reserve_match
