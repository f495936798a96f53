#include "reserve_match/io.hpp"

#include <sstream>

#include <json.hpp>

#include "reserve_match/hr_matching.hpp"

namespace reserve_match {

using nlohmann::json;

namespace {

json parse_or_throw(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("input is not valid JSON");
  return doc;
}

void expect(bool condition, const std::string& message) {
  if (!condition) throw ParseError(message);
}

std::string dump(const json& doc, int indent) {
  return doc.dump(indent) + "\n";
}

json instance_to_json_doc(const Instance& instance) {
  const InstanceData data = instance.to_data();
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["categories"] = data.categories;
  doc["traits"] = data.traits;
  doc["jobs"] = json::array();
  for (const auto& job : data.jobs) {
    json jd;
    jd["id"] = job.id;
    jd["capacity"] = job.capacity;
    if (!job.vr_reserves.empty()) jd["vr_reserves"] = job.vr_reserves;
    if (!job.hr_reserves.empty()) jd["hr_reserves"] = job.hr_reserves;
    doc["jobs"].push_back(std::move(jd));
  }
  doc["individuals"] = json::array();
  for (const auto& ind : data.individuals) {
    json id;
    id["id"] = ind.id;
    id["category"] = ind.category.has_value() ? json(*ind.category) : json(nullptr);
    id["traits"] = ind.traits;
    id["merit"] = ind.merit;
    id["preferences"] = ind.preferences;
    doc["individuals"].push_back(std::move(id));
  }
  return doc;
}

json placement_doc(const Instance& instance, const std::optional<Placement>& placement) {
  if (!placement.has_value()) return json(nullptr);
  return json{{"job", instance.job(placement->job).id},
              {"category", instance.vertical_id(placement->category)}};
}

json assignment_doc(const Instance& instance, const Assignment& assignment) {
  json by_individual = json::object();
  for (int i = 0; i < assignment.size(); ++i) {
    by_individual[instance.individual(i).id] = placement_doc(instance, assignment.at(i));
  }

  json witness = json::object();
  const auto table = holders_table(instance, assignment);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    json per_vertical = json::object();
    for (int ordinal = 0; ordinal < instance.num_verticals(); ++ordinal) {
      const auto v = VerticalCategory::from_ordinal(ordinal);
      const auto& holders = table[j][ordinal];
      if (holders.empty() || instance.job(j).total_hr(v) == 0) continue;
      const auto honored = honored_matching(instance, j, v, holders);
      json slots = json::array();
      for (const auto& [individual, trait] : honored.witness.assigned) {
        slots.push_back({{"individual", instance.individual(individual).id},
                         {"trait", instance.traits()[trait]}});
      }
      if (!slots.empty()) per_vertical[instance.vertical_id(v)] = std::move(slots);
    }
    if (!per_vertical.empty()) witness[instance.job(j).id] = std::move(per_vertical);
  }

  return json{{"assignment", std::move(by_individual)}, {"hr_witness", std::move(witness)}};
}

json witness_doc(const Instance& instance, const Witness& witness) {
  json doc;
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, IrBreach>) {
          doc["kind"] = "ir-breach";
          doc["individual"] = instance.individual(w.individual).id;
        } else if constexpr (std::is_same_v<T, IdleSeat>) {
          doc["kind"] = "idle-seat";
          doc["job"] = instance.job(w.job).id;
          doc["category"] = instance.vertical_id(w.category);
          doc["individual"] = instance.individual(w.individual).id;
        } else if constexpr (std::is_same_v<T, HrDishonored>) {
          doc["kind"] = "hr-dishonored";
          doc["job"] = instance.job(w.job).id;
          doc["category"] = instance.vertical_id(w.category);
          doc["individual"] = instance.individual(w.individual).id;
        } else if constexpr (std::is_same_v<T, EnvyPair>) {
          doc["kind"] = "envy-pair";
          doc["holder"] = instance.individual(w.holder).id;
          doc["claimant"] = instance.individual(w.claimant).id;
          doc["job"] = instance.job(w.job).id;
          doc["category"] = instance.vertical_id(w.category);
        } else if constexpr (std::is_same_v<T, VrComplianceBreach>) {
          doc["kind"] = "vr-compliance-breach";
          doc["individual"] = instance.individual(w.individual).id;
          doc["job"] = instance.job(w.job).id;
          doc["category"] = instance.categories()[w.category];
          doc["condition"] = w.condition;
        } else if constexpr (std::is_same_v<T, InterSeBreach>) {
          doc["kind"] = "inter-se-breach";
          doc["higher_merit"] = instance.individual(w.higher).id;
          doc["lower_merit"] = instance.individual(w.lower).id;
          doc["lower_job"] = instance.job(w.lower_job).id;
        }
      },
      witness);
  return doc;
}

json axiom_report_doc(const Instance& instance, const AxiomReport& report) {
  json witnesses = json::array();
  for (const auto& witness : report.witnesses) {
    witnesses.push_back(witness_doc(instance, witness));
  }
  return json{{"axiom", report.axiom}, {"pass", report.pass}, {"witnesses", std::move(witnesses)}};
}

json ids(const Instance& instance, const std::vector<int>& individuals) {
  json arr = json::array();
  for (int i : individuals) arr.push_back(instance.individual(i).id);
  return arr;
}

}  // namespace

InstanceData parse_instance_data(std::string_view json_text) {
  const json doc = parse_or_throw(json_text);
  expect(doc.is_object(), "instance document must be a JSON object");

  InstanceData data;
  if (doc.contains("categories")) {
    expect(doc["categories"].is_array(), "'categories' must be an array of ids");
    for (const auto& c : doc["categories"]) {
      expect(c.is_string(), "category ids must be strings");
      data.categories.push_back(c.get<std::string>());
    }
  }
  if (doc.contains("traits")) {
    expect(doc["traits"].is_array(), "'traits' must be an array of ids");
    for (const auto& t : doc["traits"]) {
      expect(t.is_string(), "trait ids must be strings");
      data.traits.push_back(t.get<std::string>());
    }
  }

  expect(doc.contains("jobs") && doc["jobs"].is_array(), "'jobs' must be an array");
  for (const auto& jd : doc["jobs"]) {
    expect(jd.is_object() && jd.contains("id") && jd["id"].is_string(),
           "each job needs a string 'id'");
    InstanceData::Job job;
    job.id = jd["id"].get<std::string>();
    if (jd.contains("capacity")) {
      expect(jd["capacity"].is_number_integer(), "job '" + job.id + "': capacity must be an integer");
      job.capacity = jd["capacity"].get<long long>();
    }
    if (jd.contains("vr_reserves")) {
      expect(jd["vr_reserves"].is_object(), "job '" + job.id + "': 'vr_reserves' must be an object");
      for (const auto& [category, count] : jd["vr_reserves"].items()) {
        expect(count.is_number_integer(), "job '" + job.id + "': reserves must be integers");
        job.vr_reserves[category] = count.get<long long>();
      }
    }
    if (jd.contains("hr_reserves")) {
      expect(jd["hr_reserves"].is_object(), "job '" + job.id + "': 'hr_reserves' must be an object");
      for (const auto& [vertical, row] : jd["hr_reserves"].items()) {
        expect(row.is_object(), "job '" + job.id + "': HR rows must be objects");
        for (const auto& [trait, count] : row.items()) {
          expect(count.is_number_integer(), "job '" + job.id + "': reserves must be integers");
          job.hr_reserves[vertical][trait] = count.get<long long>();
        }
      }
    }
    data.jobs.push_back(std::move(job));
  }

  expect(doc.contains("individuals") && doc["individuals"].is_array(),
         "'individuals' must be an array");
  for (const auto& id : doc["individuals"]) {
    expect(id.is_object() && id.contains("id") && id["id"].is_string(),
           "each individual needs a string 'id'");
    InstanceData::Individual ind;
    ind.id = id["id"].get<std::string>();
    if (id.contains("category") && !id["category"].is_null()) {
      expect(id["category"].is_string(),
             "individual '" + ind.id + "': category must be a string or null");
      ind.category = id["category"].get<std::string>();
    }
    if (id.contains("traits")) {
      expect(id["traits"].is_array(), "individual '" + ind.id + "': 'traits' must be an array");
      for (const auto& t : id["traits"]) {
        expect(t.is_string(), "trait ids must be strings");
        ind.traits.push_back(t.get<std::string>());
      }
    }
    if (id.contains("merit")) {
      expect(id["merit"].is_object(), "individual '" + ind.id + "': 'merit' must be an object");
      for (const auto& [job, score] : id["merit"].items()) {
        expect(score.is_number(), "individual '" + ind.id + "': merit scores must be numbers");
        ind.merit[job] = score.get<double>();
      }
    }
    if (id.contains("preferences")) {
      expect(id["preferences"].is_array(),
             "individual '" + ind.id + "': 'preferences' must be an array");
      for (const auto& p : id["preferences"]) {
        expect(p.is_string(), "preference entries must be job ids");
        ind.preferences.push_back(p.get<std::string>());
      }
    }
    data.individuals.push_back(std::move(ind));
  }

  return data;
}

Instance load_instance(std::string_view json_text, TieBreak tie_break) {
  return Instance::compile(parse_instance_data(json_text), tie_break);
}

std::string instance_to_json(const Instance& instance, int indent) {
  return dump(instance_to_json_doc(instance), indent);
}

std::string assignment_to_json(const Instance& instance, const Assignment& assignment,
                               int indent) {
  json doc = assignment_doc(instance, assignment);
  doc["schema_version"] = kSchemaVersion;
  return dump(doc, indent);
}

Assignment parse_assignment(const Instance& instance, std::string_view json_text) {
  const json doc = parse_or_throw(json_text);
  expect(doc.is_object() && doc.contains("assignment") && doc["assignment"].is_object(),
         "assignment document must contain an 'assignment' object");

  Assignment assignment(instance.num_individuals());
  std::vector<ValidationIssue> issues;
  for (const auto& [individual_id, placement] : doc["assignment"].items()) {
    const auto individual = instance.individual_index(individual_id);
    if (!individual.has_value()) {
      issues.push_back({ValidationCode::unknown_reference,
                        "assignment names unknown individual '" + individual_id + "'"});
      continue;
    }
    if (placement.is_null()) continue;
    expect(placement.is_object() && placement.contains("job") && placement["job"].is_string(),
           "placement for '" + individual_id + "' must be null or {job, category}");
    const auto job = instance.job_index(placement["job"].get<std::string>());
    if (!job.has_value()) {
      issues.push_back({ValidationCode::unknown_reference,
                        "individual '" + individual_id + "' is assigned to unknown job '" +
                            placement["job"].get<std::string>() + "'"});
      continue;
    }
    std::string category = kOpenToken;
    if (placement.contains("category")) {
      expect(placement["category"].is_string(),
             "category for '" + individual_id + "' must be a string");
      category = placement["category"].get<std::string>();
    }
    const auto vertical = instance.vertical_from_id(category);
    if (!vertical.has_value()) {
      issues.push_back({ValidationCode::unknown_reference,
                        "individual '" + individual_id + "' is assigned to unknown category '" +
                            category + "'"});
      continue;
    }
    assignment.at(*individual) = Placement{*job, *vertical};
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  auto invariant_issues = validate_assignment(instance, assignment);
  if (!invariant_issues.empty()) throw ValidationError(std::move(invariant_issues));
  return assignment;
}

std::string mechanism_run_to_json(const Instance& instance, const MechanismRun& run,
                                  bool include_trace, int indent) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["mechanism"] = run.mechanism;
  if (run.boost.has_value()) {
    json sequence = json::array();
    for (int c : run.boost->sequence) sequence.push_back(instance.categories()[c]);
    doc["boost"] = {{"category", instance.categories()[run.boost->boosted_category]},
                    {"points", run.boost->boost},
                    {"sequence", std::move(sequence)}};
  }
  json outcome = assignment_doc(instance, run.assignment);
  doc["assignment"] = std::move(outcome["assignment"]);
  doc["hr_witness"] = std::move(outcome["hr_witness"]);

  json trace = json::array();
  if (include_trace) {
    int round_number = 1;
    for (const auto& round : run.rounds) {
      json jobs = json::array();
      for (const auto& job_round : round.jobs) {
        json chosen = json::object();
        for (int ordinal = 0; ordinal < job_round.chosen.num_verticals(); ++ordinal) {
          const auto v = VerticalCategory::from_ordinal(ordinal);
          if (instance.job(job_round.job).reserve(v) == 0 &&
              job_round.chosen.chosen(v).empty()) {
            continue;
          }
          chosen[instance.vertical_id(v)] = ids(instance, job_round.chosen.chosen(v));
        }
        jobs.push_back({{"job", instance.job(job_round.job).id},
                        {"applicants", ids(instance, job_round.applicants)},
                        {"chosen", std::move(chosen)},
                        {"rejected", ids(instance, job_round.rejected)}});
      }
      trace.push_back({{"round", round_number++}, {"jobs", std::move(jobs)}});
    }
  }
  doc["trace"] = std::move(trace);

  json artifacts;
  artifacts["mrc"] = ids(instance, run.artifacts.mrcs);
  json waitlists = json::object();
  for (const auto& [key, list] : run.artifacts.waitlists) {
    waitlists[key] = ids(instance, list);
  }
  artifacts["waitlists"] = std::move(waitlists);
  json vacancies = json::array();
  for (const auto& vacancy : run.artifacts.vacancies) {
    vacancies.push_back(
        {{"job", instance.job(vacancy.job).id},
         {"category", instance.vertical_id(vacancy.category)},
         {"vacated_by", instance.individual(vacancy.vacated_by).id},
         {"filled_by", vacancy.filled_by.has_value()
                           ? json(instance.individual(*vacancy.filled_by).id)
                           : json(nullptr)}});
  }
  artifacts["vacancies"] = std::move(vacancies);
  artifacts["notes"] = run.artifacts.notes;
  doc["phase_artifacts"] = std::move(artifacts);
  doc["warnings"] = run.warnings;
  return dump(doc, indent);
}

std::string axiom_reports_to_json(const Instance& instance, std::span<const AxiomReport> reports,
                                  int indent) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  bool all_pass = true;
  json list = json::array();
  for (const auto& report : reports) {
    all_pass = all_pass && report.pass;
    list.push_back(axiom_report_doc(instance, report));
  }
  doc["axioms"] = std::move(list);
  doc["pass"] = all_pass;
  return dump(doc, indent);
}

std::string deviations_to_json(const Instance& instance, const MechanismSpec& mechanism,
                               std::span<const Deviation> deviations, int indent) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["mechanism"] = to_string(mechanism.kind);
  doc["strategy_proof"] = deviations.empty();
  json list = json::array();
  for (const auto& deviation : deviations) {
    json jobs = json::array();
    for (int j : deviation.misreport) jobs.push_back(instance.job(j).id);
    list.push_back(
        {{"individual", instance.individual(deviation.individual).id},
         {"misreport", std::move(jobs)},
         {"truthful", deviation.truthful_job.has_value()
                          ? json(instance.job(*deviation.truthful_job).id)
                          : json(nullptr)},
         {"deviant", deviation.deviant_job.has_value()
                         ? json(instance.job(*deviation.deviant_job).id)
                         : json(nullptr)}});
  }
  doc["deviations"] = std::move(list);
  return dump(doc, indent);
}

std::string pareto_compare_to_json(const Instance& instance, const Assignment& a,
                                   const Assignment& b, int indent) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["verdict"] = to_string(pareto_compare(instance, a, b));
  json diff = json::array();
  for (int i = 0; i < instance.num_individuals(); ++i) {
    const auto relation = compare_for_individual(instance, i, a, b);
    const char* text = relation == Comparison::a_better   ? "a-better"
                       : relation == Comparison::b_better ? "b-better"
                                                          : "indifferent";
    diff.push_back({{"individual", instance.individual(i).id},
                    {"a", placement_doc(instance, a.at(i))},
                    {"b", placement_doc(instance, b.at(i))},
                    {"relation", text}});
  }
  doc["individuals"] = std::move(diff);
  return dump(doc, indent);
}

std::string oracle_report_to_json(const Instance& instance, const DominanceReport& dominance,
                                  const std::vector<Assignment>& satisfying,
                                  const EquivalenceReport& equivalence, int indent) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  json sat = json::array();
  for (const auto& assignment : satisfying) {
    sat.push_back(assignment_doc(instance, assignment)["assignment"]);
  }
  doc["axiom_satisfying"] = std::move(sat);
  doc["axiom_satisfying_count"] = satisfying.size();
  doc["two_smh_da"] = assignment_doc(instance, dominance.da_outcome)["assignment"];
  json counterexamples = json::array();
  for (const auto& assignment : dominance.counterexamples) {
    counterexamples.push_back(assignment_doc(instance, assignment)["assignment"]);
  }
  doc["dominance"] = {{"pass", dominance.pass},
                      {"counterexamples", std::move(counterexamples)}};
  json unstable = json::array();
  for (const auto& assignment : equivalence.satisfying_but_unstable) {
    unstable.push_back(assignment_doc(instance, assignment)["assignment"]);
  }
  doc["stability_bridge"] = {{"pass", equivalence.pass},
                             {"satisfying_but_unstable", std::move(unstable)}};
  return dump(doc, indent);
}

std::string cutoffs_to_csv(const Instance& instance, std::span<const CutoffEntry> entries) {
  std::ostringstream out;
  out << "# schema: " << kSchemaVersion << "\n";
  out << "job,category,cutoff\n";
  for (const auto& entry : entries) {
    out << instance.job(entry.job).id << ',' << instance.vertical_id(entry.category) << ',';
    if (entry.cutoff.has_value()) {
      json score = *entry.cutoff;  // shortest round-trip formatting
      out << score.dump();
    }
    out << '\n';
  }
  return out.str();
}

std::string validation_issues_to_json(std::span<const ValidationIssue> issues, int indent) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["error"] = "validation";
  json list = json::array();
  for (const auto& issue : issues) {
    list.push_back({{"code", to_string(issue.code)}, {"message", issue.message}});
  }
  doc["issues"] = std::move(list);
  return dump(doc, indent);
}

std::string error_to_json(const std::string& code, const std::string& message, int indent) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["error"] = code;
  doc["message"] = message;
  return dump(doc, indent);
}

GenProfile parse_profile(std::string_view json_text) {
  const json doc = parse_or_throw(json_text);
  expect(doc.is_object(), "profile must be a JSON object");
  GenProfile profile;
  auto get_int = [&](const char* key, int& out) {
    if (doc.contains(key)) {
      expect(doc[key].is_number_integer(), std::string("'") + key + "' must be an integer");
      out = doc[key].get<int>();
    }
  };
  auto get_double = [&](const char* key, double& out) {
    if (doc.contains(key)) {
      expect(doc[key].is_number(), std::string("'") + key + "' must be a number");
      out = doc[key].get<double>();
    }
  };
  get_int("jobs", profile.num_jobs);
  get_int("individuals", profile.num_individuals);
  get_int("categories", profile.num_categories);
  get_int("traits", profile.num_traits);
  get_int("capacity_min", profile.capacity_min);
  get_int("capacity_max", profile.capacity_max);
  get_double("reserve_density", profile.reserve_density);
  get_double("hr_density", profile.hr_density);
  get_double("trait_density", profile.trait_density);
  get_double("acceptable_prob", profile.acceptable_prob);
  if (doc.contains("category_shares")) {
    expect(doc["category_shares"].is_object(), "'category_shares' must be an object");
    for (const auto& [name, share] : doc["category_shares"].items()) {
      expect(share.is_number(), "category shares must be numbers");
      profile.category_shares.emplace_back(name, share.get<double>());
    }
  }
  if (doc.contains("common_merit")) {
    expect(doc["common_merit"].is_boolean(), "'common_merit' must be a boolean");
    profile.common_merit = doc["common_merit"].get<bool>();
  }
  return profile;
}

std::string profile_to_json(const GenProfile& profile, int indent) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["jobs"] = profile.num_jobs;
  doc["individuals"] = profile.num_individuals;
  doc["categories"] = profile.num_categories;
  doc["traits"] = profile.num_traits;
  doc["capacity_min"] = profile.capacity_min;
  doc["capacity_max"] = profile.capacity_max;
  doc["reserve_density"] = profile.reserve_density;
  doc["hr_density"] = profile.hr_density;
  doc["trait_density"] = profile.trait_density;
  doc["acceptable_prob"] = profile.acceptable_prob;
  json shares = json::object();
  for (const auto& [name, share] : profile.category_shares) shares[name] = share;
  doc["category_shares"] = std::move(shares);
  doc["common_merit"] = profile.common_merit;
  return dump(doc, indent);
}

}  // namespace reserve_match
