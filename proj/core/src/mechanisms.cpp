#include "reserve_match/mechanisms.hpp"

#include <algorithm>
#include <map>

namespace reserve_match {

std::string to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::two_smh_da: return "2smh-da";
    case MechanismKind::uppsc_1990: return "uppsc-1990";
    case MechanismKind::upsc_mrc: return "upsc-mrc";
    case MechanismKind::tripurari_sharan: return "tripurari";
    case MechanismKind::serial_dictatorship: return "sd";
  }
  return "unknown";
}

std::optional<MechanismKind> mechanism_from_string(const std::string& name) {
  if (name == "2smh-da") return MechanismKind::two_smh_da;
  if (name == "uppsc-1990") return MechanismKind::uppsc_1990;
  if (name == "upsc-mrc") return MechanismKind::upsc_mrc;
  if (name == "tripurari") return MechanismKind::tripurari_sharan;
  if (name == "sd") return MechanismKind::serial_dictatorship;
  return std::nullopt;
}

MechanismRun run_2smh_da(const Instance& instance, const std::optional<BoostConfig>& boost) {
  if (boost.has_value()) {
    validate_boost_config(instance, *boost);
    // A tie introduced by boosting would surface mid-run with some applicant
    // set; reject the configuration up front instead.
    for (int j = 0; j < instance.num_jobs(); ++j) {
      std::vector<double> scores;
      scores.reserve(instance.num_individuals());
      for (int i = 0; i < instance.num_individuals(); ++i) {
        const double base = instance.merit(i, j);
        scores.push_back(instance.individual(i).category == boost->boosted_category
                             ? base + boost->boost
                             : base);
      }
      std::sort(scores.begin(), scores.end());
      if (std::adjacent_find(scores.begin(), scores.end()) != scores.end()) {
        throw TiedMeritAfterBoostError(
            "boosting category '" + instance.categories()[boost->boosted_category] +
            "' creates tied merit scores at job '" + instance.job(j).id + "'");
      }
    }
  }

  MechanismRun run;
  run.mechanism = to_string(MechanismKind::two_smh_da);
  run.boost = boost;

  const int n = instance.num_individuals();
  std::vector<int> next_pref(n, 0);  // index of the job currently proposed to
  std::vector<int> held_job(n, -1);
  std::vector<VerticalCategory> held_category(n, VerticalCategory::open());

  while (true) {
    std::map<int, std::vector<int>> proposals;  // job -> new proposers
    for (int i = 0; i < n; ++i) {
      const auto& prefs = instance.individual(i).preferences;
      if (held_job[i] < 0 && next_pref[i] < static_cast<int>(prefs.size())) {
        proposals[prefs[next_pref[i]]].push_back(i);
      }
    }
    if (proposals.empty()) break;

    Round round;
    for (auto& [job, proposers] : proposals) {
      std::vector<int> applicants;
      for (int i = 0; i < n; ++i) {
        if (held_job[i] == job) applicants.push_back(i);
      }
      applicants.insert(applicants.end(), proposers.begin(), proposers.end());
      std::sort(applicants.begin(), applicants.end());

      ChoiceResult choice = boost.has_value()
                                ? two_smh_boost_choose(instance, job, applicants, *boost)
                                : two_smh_choose(instance, job, applicants);

      std::vector<int> rejected;
      for (int i : applicants) {
        bool kept = false;
        for (int ordinal = 0; ordinal < choice.num_verticals(); ++ordinal) {
          const auto v = VerticalCategory::from_ordinal(ordinal);
          if (choice.at(v).contains(i)) {
            held_job[i] = job;
            held_category[i] = v;
            kept = true;
            break;
          }
        }
        if (!kept) {
          rejected.push_back(i);
          held_job[i] = -1;
          ++next_pref[i];  // permanent rejection: move on to the next choice
        }
      }
      round.jobs.push_back(JobRound{job, std::move(applicants), std::move(choice),
                                    std::move(rejected)});
    }
    run.rounds.push_back(std::move(round));
  }

  run.assignment = Assignment(n);
  for (int i = 0; i < n; ++i) {
    if (held_job[i] >= 0) run.assignment.at(i) = Placement{held_job[i], held_category[i]};
  }
  return run;
}

namespace {

std::vector<int> require_common_merit(const Instance& instance) {
  auto order = common_merit_order(instance);
  if (!order.has_value()) {
    throw NoCommonMeritRankingError(
        "this mechanism requires the same merit ranking at every job");
  }
  return *order;
}

bool has_hr_reserves(const Instance& instance) {
  for (const auto& job : instance.jobs()) {
    for (const auto& row : job.hr_reserves) {
      for (int r : row) {
        if (r > 0) return true;
      }
    }
  }
  return false;
}

void warn_hr_ignored(const Instance& instance, MechanismRun& run) {
  if (has_hr_reserves(instance)) {
    run.warnings.push_back(
        "instance declares HR reserves; this mechanism ignores them");
  }
}

// Candidates in the given order each take their most preferred job with a
// position remaining in the pool.
void serial_dictatorship(const Instance& instance, std::span<const int> candidates,
                         PositionPool& pool, Assignment& assignment) {
  for (int i : candidates) {
    for (int job : instance.individual(i).preferences) {
      if (pool.remaining[job] > 0) {
        --pool.remaining[job];
        assignment.at(i) = Placement{job, pool.category};
        break;
      }
    }
  }
}

PositionPool open_pool(const Instance& instance) {
  PositionPool pool{VerticalCategory::open(), {}};
  pool.remaining.reserve(instance.jobs().size());
  for (const auto& job : instance.jobs()) pool.remaining.push_back(job.open_capacity);
  return pool;
}

PositionPool category_pool(const Instance& instance, int category) {
  PositionPool pool{VerticalCategory::reserved(category), {}};
  pool.remaining.reserve(instance.jobs().size());
  for (const auto& job : instance.jobs()) pool.remaining.push_back(job.vr_reserves[category]);
  return pool;
}

}  // namespace

Assignment run_serial_dictatorship(const Instance& instance, const PositionPool& pool) {
  const auto order = require_common_merit(instance);
  std::vector<int> eligible;
  for (int i : order) {
    if (instance.eligible(i, pool.category)) eligible.push_back(i);
  }
  Assignment assignment(instance.num_individuals());
  PositionPool working = pool;
  serial_dictatorship(instance, eligible, working, assignment);
  return assignment;
}

MechanismRun run_uppsc_1990(const Instance& instance) {
  const auto order = require_common_merit(instance);

  MechanismRun run;
  run.mechanism = to_string(MechanismKind::uppsc_1990);
  warn_hr_ignored(instance, run);
  run.assignment = Assignment(instance.num_individuals());

  // Step 1: open positions, final.
  auto open = open_pool(instance);
  serial_dictatorship(instance, order, open, run.assignment);

  // Step 2: per category, the members left unassigned, final.
  for (int c = 0; c < instance.num_categories(); ++c) {
    std::vector<int> members;
    for (int i : order) {
      if (instance.individual(i).category == c && !run.assignment.at(i).has_value()) {
        members.push_back(i);
      }
    }
    auto pool = category_pool(instance, c);
    serial_dictatorship(instance, members, pool, run.assignment);
  }
  return run;
}

MechanismRun run_upsc_mrc(const Instance& instance) {
  const auto order = require_common_merit(instance);

  MechanismRun run;
  run.mechanism = to_string(MechanismKind::upsc_mrc);
  warn_hr_ignored(instance, run);

  const int n = instance.num_individuals();

  // Step 1: tentative open allocation; VR-protected winners become MRCs.
  Assignment open_tentative(n);
  auto open = open_pool(instance);
  serial_dictatorship(instance, order, open, open_tentative);

  std::vector<int>& mrcs = run.artifacts.mrcs;
  for (int i : order) {
    if (open_tentative.at(i).has_value() && instance.individual(i).category.has_value()) {
      mrcs.push_back(i);
    }
  }
  std::vector<char> is_mrc(n, 0);
  for (int i : mrcs) is_mrc[i] = 1;

  // Step 2: per category, all members (MRCs included) compete for the
  // category positions.
  Assignment vr_tentative(n);
  for (int c = 0; c < instance.num_categories(); ++c) {
    std::vector<int> members;
    for (int i : order) {
      if (instance.individual(i).category == c) members.push_back(i);
    }
    auto pool = category_pool(instance, c);
    serial_dictatorship(instance, members, pool, vr_tentative);
  }

  // Steps 1-2 finalization: everything except what the MRCs hold.
  run.assignment = Assignment(n);
  for (int i = 0; i < n; ++i) {
    if (is_mrc[i]) continue;
    if (open_tentative.at(i).has_value()) {
      run.assignment.at(i) = open_tentative.at(i);
    } else if (vr_tentative.at(i).has_value()) {
      run.assignment.at(i) = vr_tentative.at(i);
    }
  }

  // Step 3: waitlists among candidates with no assignment of any kind.
  auto unassigned = [&](int i) {
    return !is_mrc[i] && !open_tentative.at(i).has_value() && !vr_tentative.at(i).has_value();
  };
  auto take_waitlist = [&](std::optional<int> category, int target) {
    std::vector<int> list;
    for (int i : order) {
      if (static_cast<int>(list.size()) == target) break;
      if (unassigned(i) && instance.individual(i).category == category) list.push_back(i);
    }
    return list;
  };

  const int total_mrcs = static_cast<int>(mrcs.size());
  std::map<int, int> mrcs_per_category;
  for (int i : mrcs) ++mrcs_per_category[*instance.individual(i).category];

  auto general_waitlist = take_waitlist(std::nullopt, total_mrcs);
  if (static_cast<int>(general_waitlist.size()) < total_mrcs) {
    run.artifacts.notes.push_back("general waitlist short: " +
                                  std::to_string(general_waitlist.size()) + " of " +
                                  std::to_string(total_mrcs) + " candidates available");
  }
  run.artifacts.waitlists.emplace_back(kOpenToken, general_waitlist);

  std::map<int, std::vector<int>> category_waitlists;
  for (int c = 0; c < instance.num_categories(); ++c) {
    const int target = mrcs_per_category.count(c) ? mrcs_per_category[c] : 0;
    if (target == 0) continue;
    auto list = take_waitlist(c, target);
    if (static_cast<int>(list.size()) < target) {
      run.artifacts.notes.push_back("category '" + instance.categories()[c] +
                                    "' waitlist short: " + std::to_string(list.size()) +
                                    " of " + std::to_string(target) + " candidates available");
    }
    run.artifacts.waitlists.emplace_back(instance.categories()[c], list);
    category_waitlists[c] = std::move(list);
  }

  // Step 4: each MRC keeps the better of her two tentative positions; a
  // same-job pair resolves to the open position.
  std::vector<std::pair<int, Placement>> vacated;  // (vacated_by, position)
  for (int i : mrcs) {
    const Placement open_seat = *open_tentative.at(i);
    const auto& vr_seat = vr_tentative.at(i);
    const bool migrate =
        vr_seat.has_value() && instance.prefers(i, vr_seat->job, open_seat.job);
    if (migrate) {
      run.assignment.at(i) = vr_seat;
      vacated.emplace_back(i, open_seat);
    } else {
      run.assignment.at(i) = open_seat;
      if (vr_seat.has_value()) vacated.emplace_back(i, *vr_seat);
    }
  }

  // Step 5: reassign vacated positions to the matching waitlist.
  auto reassign = [&](const std::vector<int>& waitlist, VerticalCategory category) {
    PositionPool pool{category, std::vector<int>(instance.num_jobs(), 0)};
    std::vector<std::pair<int, Placement>> lots;
    for (const auto& [by, seat] : vacated) {
      if (seat.category == category) {
        ++pool.remaining[seat.job];
        lots.emplace_back(by, seat);
      }
    }
    Assignment filled(n);
    serial_dictatorship(instance, waitlist, pool, filled);
    for (int i : waitlist) {
      if (filled.at(i).has_value()) run.assignment.at(i) = filled.at(i);
    }
    for (const auto& [by, seat] : lots) {
      // Attribute fills to vacancies in merit order of the vacating MRCs.
      std::optional<int> taker;
      for (int i : waitlist) {
        if (filled.at(i).has_value() && filled.at(i)->job == seat.job) {
          bool already_used = false;
          for (const auto& v : run.artifacts.vacancies) {
            if (v.filled_by == i) already_used = true;
          }
          if (!already_used) {
            taker = i;
            break;
          }
        }
      }
      run.artifacts.vacancies.push_back(Vacancy{seat.job, seat.category, by, taker});
    }
  };

  reassign(general_waitlist, VerticalCategory::open());
  for (auto& [c, list] : category_waitlists) {
    reassign(list, VerticalCategory::reserved(c));
  }

  return run;
}

MechanismRun run_tripurari_sharan(const Instance& instance) {
  const auto order = require_common_merit(instance);

  MechanismRun run;
  run.mechanism = to_string(MechanismKind::tripurari_sharan);
  warn_hr_ignored(instance, run);

  const int n = instance.num_individuals();
  std::vector<int> merit_position(n, 0);
  for (std::size_t k = 0; k < order.size(); ++k) merit_position[order[k]] = static_cast<int>(k);

  // Tentative open allocation, then tentative VR allocation among the rest.
  Assignment assignment(n);
  auto open = open_pool(instance);
  serial_dictatorship(instance, order, open, assignment);

  std::vector<int>& mrcs = run.artifacts.mrcs;
  for (int i : order) {
    if (assignment.at(i).has_value() && instance.individual(i).category.has_value()) {
      mrcs.push_back(i);
    }
  }

  for (int c = 0; c < instance.num_categories(); ++c) {
    std::vector<int> members;
    for (int i : order) {
      if (instance.individual(i).category == c && !assignment.at(i).has_value()) {
        members.push_back(i);
      }
    }
    auto pool = category_pool(instance, c);
    serial_dictatorship(instance, members, pool, assignment);
  }

  if (mrcs.size() > 1) {
    run.artifacts.notes.push_back(
        "multiple MRCs: processed in descending merit, one migration each");
  }

  // Each MRC, in descending merit, may displace the lowest-merit holder of a
  // same-category seat at a strictly preferred job; the displaced candidate
  // inherits the vacated open seat when it is acceptable to him.
  for (int mrc : mrcs) {
    const Placement open_seat = *assignment.at(mrc);
    const int category = *instance.individual(mrc).category;
    const auto v = VerticalCategory::reserved(category);
    const int own_rank = instance.pref_rank(mrc, open_seat.job);

    bool migrated = false;
    for (int job : instance.individual(mrc).preferences) {
      if (instance.pref_rank(mrc, job) >= own_rank) break;
      std::optional<int> displaced;
      for (int i = 0; i < n; ++i) {
        if (assignment.at(i) == std::optional<Placement>(Placement{job, v}) &&
            merit_position[i] > merit_position[mrc] &&
            (!displaced.has_value() || merit_position[i] > merit_position[*displaced])) {
          displaced = i;
        }
      }
      if (!displaced.has_value()) continue;

      assignment.at(mrc) = Placement{job, v};
      if (instance.acceptable(*displaced, open_seat.job)) {
        assignment.at(*displaced) = open_seat;
        run.artifacts.vacancies.push_back(
            Vacancy{open_seat.job, open_seat.category, mrc, displaced});
      } else {
        assignment.at(*displaced) = std::nullopt;
        run.artifacts.vacancies.push_back(
            Vacancy{open_seat.job, open_seat.category, mrc, std::nullopt});
      }
      migrated = true;
      break;
    }
    (void)migrated;
  }

  run.assignment = std::move(assignment);
  return run;
}

MechanismRun run_mechanism(const Instance& instance, const MechanismSpec& spec) {
  switch (spec.kind) {
    case MechanismKind::two_smh_da:
      return run_2smh_da(instance, spec.boost);
    case MechanismKind::uppsc_1990:
      return run_uppsc_1990(instance);
    case MechanismKind::upsc_mrc:
      return run_upsc_mrc(instance);
    case MechanismKind::tripurari_sharan:
      return run_tripurari_sharan(instance);
    case MechanismKind::serial_dictatorship: {
      // Standalone `sd` allocates the open positions only, the building
      // block the legacy mechanisms start from.
      MechanismRun run;
      run.mechanism = to_string(MechanismKind::serial_dictatorship);
      warn_hr_ignored(instance, run);
      run.assignment = run_serial_dictatorship(instance, open_pool(instance));
      return run;
    }
  }
  throw std::invalid_argument("unknown mechanism");
}

}  // namespace reserve_match
