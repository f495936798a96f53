#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reserve_match/axioms.hpp"
#include "reserve_match/generator.hpp"
#include "reserve_match/io.hpp"
#include "reserve_match/mechanisms.hpp"
#include "reserve_match/oracle.hpp"

namespace {

using namespace reserve_match;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

struct CommonOptions {
  std::string instance_path;
  std::string tie_break;

  TieBreak tie_break_mode() const {
    return tie_break == "id" ? TieBreak::by_id : TieBreak::reject;
  }
};

void add_instance_options(CLI::App* cmd, CommonOptions& options) {
  cmd->add_option("--instance", options.instance_path, "instance JSON file")->required();
  cmd->add_option("--tie-break", options.tie_break,
                  "tie handling: 'id' perturbs tied merit scores by individual id")
      ->check(CLI::IsMember({"id"}));
}

Instance load(const CommonOptions& options) {
  auto instance = load_instance(read_file(options.instance_path), options.tie_break_mode());
  if (instance.tie_broken()) {
    std::cerr << "note: tied merit scores were perturbed by individual id\n";
  }
  return instance;
}

struct BoostOptions {
  std::string category;
  double points = 10.0;
  std::string sequence;

  bool configured() const { return !category.empty(); }

  BoostConfig resolve(const Instance& instance) const {
    const auto category_index = instance.category_index(category);
    if (!category_index.has_value()) {
      throw ParseError("unknown boost category '" + category + "'");
    }
    BoostConfig config;
    config.boosted_category = *category_index;
    config.boost = points;
    if (sequence.empty()) {
      throw ParseError("--sequence is required with --boost-category: the outcome depends on "
                       "the processing order of the VR categories");
    }
    std::stringstream stream(sequence);
    std::string token;
    while (std::getline(stream, token, ',')) {
      const auto index = instance.category_index(token);
      if (!index.has_value()) throw ParseError("unknown category '" + token + "' in --sequence");
      config.sequence.push_back(*index);
    }
    return config;
  }
};

void add_boost_options(CLI::App* cmd, BoostOptions& options) {
  cmd->add_option("--boost-category", options.category,
                  "treat this VR category as a soft reserve with a merit boost");
  cmd->add_option("--boost", options.points, "merit boost for members of the boosted category")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--sequence", options.sequence,
                  "comma-separated processing order of all VR categories");
}

MechanismSpec resolve_mechanism(const std::string& name, const BoostOptions& boost,
                                const Instance& instance) {
  const auto kind = mechanism_from_string(name);
  if (!kind.has_value()) throw ParseError("unknown mechanism '" + name + "'");
  MechanismSpec spec{*kind, std::nullopt};
  if (boost.configured()) {
    if (spec.kind != MechanismKind::two_smh_da) {
      throw ParseError("--boost-category applies to the 2smh-da mechanism only");
    }
    spec.boost = boost.resolve(instance);
  }
  return spec;
}

int run_allocate(const CommonOptions& common, const std::string& mechanism,
                 const BoostOptions& boost, const std::string& out_path, bool trace) {
  const auto instance = load(common);
  const auto spec = resolve_mechanism(mechanism, boost, instance);
  auto run = run_mechanism(instance, spec);
  if (instance.tie_broken()) {
    run.warnings.push_back("tied merit scores were perturbed by individual id");
  }
  for (const auto& warning : run.warnings) std::cerr << "warning: " << warning << "\n";
  write_file(out_path, mechanism_run_to_json(instance, run, trace));
  return kExitPass;
}

int run_audit(const CommonOptions& common, const std::string& assignment_path,
              const std::vector<std::string>& axiom_names) {
  const auto instance = load(common);
  const auto assignment = parse_assignment(instance, read_file(assignment_path));

  std::vector<std::string> requested = axiom_names;
  if (requested.empty()) {
    requested = {kAxiomIndividualRationality, kAxiomNonWastefulness, kAxiomMaxHrAccommodation,
                 kAxiomNoJustifiedEnvy, kAxiomVrCompliance};
  }

  std::vector<AxiomReport> reports;
  bool all_pass = true;
  for (const auto& name : requested) {
    AxiomReport report;
    if (name == kAxiomIndividualRationality) {
      report = check_individual_rationality(instance, assignment);
    } else if (name == kAxiomNonWastefulness) {
      report = check_non_wastefulness(instance, assignment);
    } else if (name == kAxiomMaxHrAccommodation) {
      report = check_max_hr_accommodation(instance, assignment);
    } else if (name == kAxiomNoJustifiedEnvy) {
      report = check_no_justified_envy(instance, assignment);
    } else if (name == kAxiomVrCompliance) {
      report = check_vr_compliance(instance, assignment);
    } else if (name == kAxiomInterSeMerit) {
      report = check_inter_se_merit(instance, assignment);
    } else {
      throw ParseError("unknown axiom '" + name + "'");
    }
    all_pass = all_pass && report.pass;
    reports.push_back(std::move(report));
  }

  std::cout << axiom_reports_to_json(instance, reports);
  return all_pass ? kExitPass : kExitCheckFailed;
}

int run_compare(const CommonOptions& common, const std::string& a_path,
                const std::string& b_path) {
  const auto instance = load(common);
  const auto a = parse_assignment(instance, read_file(a_path));
  const auto b = parse_assignment(instance, read_file(b_path));
  std::cout << pareto_compare_to_json(instance, a, b);
  return kExitPass;
}

int run_oracle(const CommonOptions& common, int max_individuals, int max_seats) {
  const auto instance = load(common);
  OracleLimits limits;
  limits.max_individuals = max_individuals;
  limits.max_total_seats = max_seats;
  const auto satisfying = axiom_satisfying_set(instance, limits);
  const auto dominance = verify_dominance(instance, limits);
  const auto equivalence = equivalence_axioms_stability(instance, limits);
  std::cout << oracle_report_to_json(instance, dominance, satisfying, equivalence);
  return dominance.pass && equivalence.pass ? kExitPass : kExitCheckFailed;
}

int run_sp_test(const CommonOptions& common, const std::string& mechanism,
                const BoostOptions& boost, int max_jobs) {
  const auto instance = load(common);
  const auto spec = resolve_mechanism(mechanism, boost, instance);
  const auto deviations = check_strategy_proofness(instance, spec, max_jobs);
  std::cout << deviations_to_json(instance, spec, deviations);
  return deviations.empty() ? kExitPass : kExitCheckFailed;
}

struct GenOptions {
  std::uint64_t seed = 0;
  std::string profile_path;
  std::string out_path;
  GenProfile profile;
  std::vector<std::string> shares;
  bool common_merit = false;
};

int run_gen(GenOptions& options, const CLI::App* cmd) {
  if (!options.profile_path.empty()) {
    auto from_file = parse_profile(read_file(options.profile_path));
    // explicit flags win over the profile file
    auto keep_if_set = [&](const char* flag, auto member, auto& target) {
      if (cmd->count(flag) == 0) target.*member = from_file.*member;
    };
    keep_if_set("--jobs", &GenProfile::num_jobs, options.profile);
    keep_if_set("--individuals", &GenProfile::num_individuals, options.profile);
    keep_if_set("--categories", &GenProfile::num_categories, options.profile);
    keep_if_set("--traits", &GenProfile::num_traits, options.profile);
    keep_if_set("--capacity-min", &GenProfile::capacity_min, options.profile);
    keep_if_set("--capacity-max", &GenProfile::capacity_max, options.profile);
    keep_if_set("--reserve-density", &GenProfile::reserve_density, options.profile);
    keep_if_set("--hr-density", &GenProfile::hr_density, options.profile);
    keep_if_set("--trait-density", &GenProfile::trait_density, options.profile);
    keep_if_set("--acceptable-prob", &GenProfile::acceptable_prob, options.profile);
    if (options.shares.empty()) options.profile.category_shares = from_file.category_shares;
    if (cmd->count("--common-merit") == 0) options.common_merit = from_file.common_merit;
  }
  for (const auto& share : options.shares) {
    const auto eq = share.find('=');
    if (eq == std::string::npos) {
      throw ParseError("--share expects NAME=FRACTION, got '" + share + "'");
    }
    options.profile.category_shares.emplace_back(share.substr(0, eq),
                                                 std::stod(share.substr(eq + 1)));
  }
  options.profile.common_merit = options.common_merit;

  std::uint64_t seed = options.seed;
  if (const char* env_seed = std::getenv("RESERVE_MATCH_SEED")) {
    seed = std::stoull(env_seed);  // env overrides for fuzz harnesses
  }

  const auto instance = generate(seed, options.profile);
  const auto text = instance_to_json(instance);
  if (options.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(options.out_path, text);
  }
  return kExitPass;
}

int run_cutoffs(const CommonOptions& common, const std::string& assignment_path) {
  const auto instance = load(common);
  const auto assignment = parse_assignment(instance, read_file(assignment_path));
  std::cout << cutoffs_to_csv(instance, cutoff_scores(instance, assignment));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reservation matching engine: joint vertical/horizontal reserve allocation"};
  app.require_subcommand(1);

  // allocate
  CommonOptions allocate_common;
  std::string allocate_mechanism;
  BoostOptions allocate_boost;
  std::string allocate_out;
  bool allocate_trace = false;
  auto* allocate = app.add_subcommand("allocate", "run a mechanism and write the outcome");
  add_instance_options(allocate, allocate_common);
  allocate->add_option("--mechanism", allocate_mechanism, "2smh-da|uppsc-1990|upsc-mrc|tripurari|sd")
      ->required();
  add_boost_options(allocate, allocate_boost);
  allocate->add_option("--out", allocate_out, "output file for the run JSON")->required();
  allocate->add_flag("--trace", allocate_trace, "include the per-round log");

  // audit
  CommonOptions audit_common;
  std::string audit_assignment;
  std::vector<std::string> audit_axioms;
  auto* audit = app.add_subcommand("audit", "check an assignment against the axioms");
  add_instance_options(audit, audit_common);
  audit->add_option("--assignment", audit_assignment, "assignment JSON file")->required();
  audit->add_option("--axioms", audit_axioms,
                    "axioms to check (default: the five core axioms)")
      ->delimiter(',');

  // compare
  CommonOptions compare_common;
  std::string compare_a;
  std::string compare_b;
  auto* compare = app.add_subcommand("compare", "pareto-compare two assignments");
  add_instance_options(compare, compare_common);
  compare->add_option("--a", compare_a, "first assignment JSON file")->required();
  compare->add_option("--b", compare_b, "second assignment JSON file")->required();

  // oracle
  CommonOptions oracle_common;
  int oracle_max_individuals = 6;
  int oracle_max_seats = 8;
  auto* oracle = app.add_subcommand(
      "oracle", "enumerate all assignments, filter by the axioms, check dominance");
  add_instance_options(oracle, oracle_common);
  oracle->add_option("--max-individuals", oracle_max_individuals, "enumeration limit");
  oracle->add_option("--max-seats", oracle_max_seats, "total-position enumeration limit");

  // sp-test
  CommonOptions sp_common;
  std::string sp_mechanism;
  BoostOptions sp_boost;
  int sp_max_jobs = 4;
  auto* sp_test =
      app.add_subcommand("sp-test", "exhaustively search for profitable misreports");
  add_instance_options(sp_test, sp_common);
  sp_test->add_option("--mechanism", sp_mechanism, "mechanism to probe")->required();
  add_boost_options(sp_test, sp_boost);
  sp_test->add_option("--max-jobs", sp_max_jobs, "refuse instances with more jobs than this");

  // gen
  GenOptions gen_options;
  auto* gen = app.add_subcommand("gen", "generate a random valid instance");
  gen->add_option("--seed", gen_options.seed, "RNG seed (RESERVE_MATCH_SEED overrides)");
  gen->add_option("--profile", gen_options.profile_path, "profile JSON file");
  gen->add_option("--out", gen_options.out_path, "output file (stdout if omitted)");
  gen->add_option("--jobs", gen_options.profile.num_jobs, "number of jobs");
  gen->add_option("--individuals", gen_options.profile.num_individuals, "number of individuals");
  gen->add_option("--categories", gen_options.profile.num_categories,
                  "number of synthetic VR categories (ignored with --share)");
  gen->add_option("--traits", gen_options.profile.num_traits, "number of traits");
  gen->add_option("--capacity-min", gen_options.profile.capacity_min, "minimum job capacity");
  gen->add_option("--capacity-max", gen_options.profile.capacity_max, "maximum job capacity");
  gen->add_option("--reserve-density", gen_options.profile.reserve_density,
                  "fraction of capacity set aside for VR categories");
  gen->add_option("--hr-density", gen_options.profile.hr_density,
                  "fraction of each vertical's seats that is HR-protected");
  gen->add_option("--trait-density", gen_options.profile.trait_density,
                  "probability an individual carries each trait");
  gen->add_option("--acceptable-prob", gen_options.profile.acceptable_prob,
                  "probability a job enters a preference list");
  gen->add_option("--share", gen_options.shares, "category share as NAME=FRACTION (repeatable)");
  gen->add_flag("--common-merit", gen_options.common_merit,
                "use one merit ranking for every job");

  // cutoffs
  CommonOptions cutoffs_common;
  std::string cutoffs_assignment;
  auto* cutoffs = app.add_subcommand("cutoffs", "per-(job, category) minimum holder merit, CSV");
  add_instance_options(cutoffs, cutoffs_common);
  cutoffs->add_option("--assignment", cutoffs_assignment, "assignment JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;  // --help and friends
    std::cout << error_to_json("usage", e.what());
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(allocate)) {
      return run_allocate(allocate_common, allocate_mechanism, allocate_boost, allocate_out,
                          allocate_trace);
    }
    if (app.got_subcommand(audit)) return run_audit(audit_common, audit_assignment, audit_axioms);
    if (app.got_subcommand(compare)) return run_compare(compare_common, compare_a, compare_b);
    if (app.got_subcommand(oracle)) {
      return run_oracle(oracle_common, oracle_max_individuals, oracle_max_seats);
    }
    if (app.got_subcommand(sp_test)) {
      return run_sp_test(sp_common, sp_mechanism, sp_boost, sp_max_jobs);
    }
    if (app.got_subcommand(gen)) return run_gen(gen_options, gen);
    if (app.got_subcommand(cutoffs)) return run_cutoffs(cutoffs_common, cutoffs_assignment);
  } catch (const ValidationError& e) {
    std::cout << validation_issues_to_json(e.issues());
    return kExitUsage;
  } catch (const Error& e) {
    std::cout << error_to_json(e.code(), e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cout << error_to_json("internal", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
