#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "reserve_match/io.hpp"
#include "support/fixtures.hpp"

// End-to-end runs of the installed command-line interface against the worked
// examples, checking outputs and the exit-code contract (0 pass, 1 check
// failed, 2 usage/validation error).

namespace fs = std::filesystem;
using nlohmann::json;
using namespace reserve_match;
using namespace reserve_match::testing;

namespace {

struct CommandResult {
  int exit_code;
  std::string output;  // stdout only
};

CommandResult run_cli(const std::string& args) {
  const std::string command = std::string(RESERVE_MATCH_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer;
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t bytes = 0;
  while ((bytes = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    output.append(buffer.data(), bytes);
  }
  const int status = pclose(pipe);
  return CommandResult{WEXITSTATUS(status), output};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("reserve_match_cli_" +
                                                 std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string file(const std::string& name, const std::string& content) const {
    const auto full = path_ / name;
    std::ofstream out(full);
    out << content;
    return full.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("allocate reproduces the civil-services outcome") {
  TempDir dir;
  const auto instance = civil_services_instance();
  const auto instance_path = dir.file("instance.json", instance_to_json(instance));
  const auto out_path = dir.path("run.json");

  const auto result = run_cli("allocate --instance " + instance_path +
                              " --mechanism upsc-mrc --out " + out_path + " --trace");
  CHECK(result.exit_code == 0);

  const auto doc = json::parse(slurp(out_path));
  CHECK(doc["schema_version"] == "v1");
  CHECK(doc["assignment"]["a1"]["job"] == "x");
  CHECK(doc["assignment"]["a2"]["job"] == "z");
  CHECK(doc["assignment"]["a3"]["job"] == "y");
  CHECK(doc["assignment"]["b1"]["job"] == "x");
  CHECK(doc["assignment"]["b1"]["category"] == "c");
  CHECK(doc["assignment"]["b2"].is_null());
  CHECK(doc["phase_artifacts"]["mrc"] == json::array({"b1"}));
}

TEST_CASE("audit passes the unique satisfying assignment and fails the swap") {
  TempDir dir;
  const auto instance = three_individual_instance();
  const auto instance_path = dir.file("instance.json", instance_to_json(instance));

  Assignment alpha(instance.num_individuals());
  alpha.at(*instance.individual_index("a")) =
      Placement{*instance.job_index("x"), VerticalCategory::open()};
  alpha.at(*instance.individual_index("b")) =
      Placement{*instance.job_index("y"), VerticalCategory::open()};
  const auto alpha_path = dir.file("alpha.json", assignment_to_json(instance, alpha));

  Assignment beta(instance.num_individuals());
  beta.at(*instance.individual_index("a")) =
      Placement{*instance.job_index("y"), VerticalCategory::open()};
  beta.at(*instance.individual_index("b")) =
      Placement{*instance.job_index("x"), VerticalCategory::open()};
  const auto beta_path = dir.file("beta.json", assignment_to_json(instance, beta));

  const auto pass = run_cli("audit --instance " + instance_path + " --assignment " + alpha_path);
  CHECK(pass.exit_code == 0);
  CHECK(json::parse(pass.output)["pass"] == true);

  const auto fail = run_cli("audit --instance " + instance_path + " --assignment " + beta_path);
  CHECK(fail.exit_code == 1);
  const auto doc = json::parse(fail.output);
  CHECK(doc["pass"] == false);
  bool witness_found = false;
  for (const auto& axiom : doc["axioms"]) {
    if (axiom["axiom"] == "max-hr-accommodation") {
      CHECK(axiom["pass"] == false);
      for (const auto& witness : axiom["witnesses"]) {
        if (witness["kind"] == "hr-dishonored" && witness["job"] == "y" &&
            witness["category"] == "o" && witness["individual"] == "c") {
          witness_found = true;
        }
      }
    } else {
      CHECK(axiom["pass"] == true);
    }
  }
  CHECK(witness_found);
}

TEST_CASE("compare reports dominance with a per-individual diff") {
  TempDir dir;
  const auto instance = two_individual_instance();
  const auto instance_path = dir.file("instance.json", instance_to_json(instance));

  Assignment alpha(instance.num_individuals());
  alpha.at(0) = Placement{*instance.job_index("y"), VerticalCategory::open()};
  alpha.at(1) = Placement{*instance.job_index("x"), VerticalCategory::open()};
  Assignment beta(instance.num_individuals());
  beta.at(0) = Placement{*instance.job_index("x"), VerticalCategory::open()};
  beta.at(1) = Placement{*instance.job_index("y"), VerticalCategory::open()};

  const auto a_path = dir.file("a.json", assignment_to_json(instance, alpha));
  const auto b_path = dir.file("b.json", assignment_to_json(instance, beta));

  const auto result =
      run_cli("compare --instance " + instance_path + " --a " + a_path + " --b " + b_path);
  CHECK(result.exit_code == 0);
  const auto doc = json::parse(result.output);
  CHECK(doc["verdict"] == "a-dominates");
  CHECK(doc["individuals"].size() == 2);
  for (const auto& row : doc["individuals"]) {
    CHECK(row["relation"] == "a-better");
  }
}

TEST_CASE("oracle emits the satisfying set and dominance verdict") {
  TempDir dir;
  const auto instance = two_individual_instance();
  const auto instance_path = dir.file("instance.json", instance_to_json(instance));

  const auto result = run_cli("oracle --instance " + instance_path);
  CHECK(result.exit_code == 0);
  const auto doc = json::parse(result.output);
  CHECK(doc["axiom_satisfying_count"] == 2);
  CHECK(doc["dominance"]["pass"] == true);
  CHECK(doc["stability_bridge"]["pass"] == true);
}

TEST_CASE("sp-test flags the manipulable legacy rule and clears the proposal") {
  TempDir dir;
  const auto trap = two_phase_trap_instance();
  const auto trap_path = dir.file("trap.json", instance_to_json(trap));

  const auto legacy = run_cli("sp-test --instance " + trap_path + " --mechanism uppsc-1990");
  CHECK(legacy.exit_code == 1);
  const auto legacy_doc = json::parse(legacy.output);
  CHECK(legacy_doc["strategy_proof"] == false);
  bool truncation_found = false;
  for (const auto& deviation : legacy_doc["deviations"]) {
    if (deviation["individual"] == "b1" && deviation["misreport"] == json::array({"x"})) {
      CHECK(deviation["truthful"] == "y");
      CHECK(deviation["deviant"] == "x");
      truncation_found = true;
    }
  }
  CHECK(truncation_found);

  const auto da = run_cli("sp-test --instance " + trap_path + " --mechanism 2smh-da");
  CHECK(da.exit_code == 0);
  CHECK(json::parse(da.output)["deviations"].empty());
}

TEST_CASE("gen is deterministic and env seed overrides the flag") {
  TempDir dir;
  const auto first = dir.path("one.json");
  const auto second = dir.path("two.json");
  CHECK(run_cli("gen --seed 42 --individuals 8 --jobs 3 --out " + first).exit_code == 0);
  CHECK(run_cli("gen --seed 42 --individuals 8 --jobs 3 --out " + second).exit_code == 0);
  CHECK(slurp(first) == slurp(second));

  // the generated instance loads and validates
  CHECK_NOTHROW(load_instance(slurp(first)));

  // RESERVE_MATCH_SEED wins over --seed
  const std::string wrapped = "sh -c 'RESERVE_MATCH_SEED=43 " +
                              std::string(RESERVE_MATCH_CLI_PATH) +
                              " gen --seed 42 --individuals 8 --jobs 3'";
  std::array<char, 4096> buffer;
  std::string output;
  FILE* pipe = popen(wrapped.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t bytes = 0;
  while ((bytes = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    output.append(buffer.data(), bytes);
  }
  pclose(pipe);
  CHECK(output != slurp(first));
  CHECK_NOTHROW(load_instance(output));
}

TEST_CASE("cutoffs prints the schema-tagged CSV") {
  TempDir dir;
  const auto instance = civil_services_instance();
  const auto instance_path = dir.file("instance.json", instance_to_json(instance));
  const auto out_path = dir.path("run.json");
  REQUIRE(run_cli("allocate --instance " + instance_path + " --mechanism upsc-mrc --out " +
                  out_path)
              .exit_code == 0);

  // feed the run's assignment back in as an assignment document
  auto run_doc = json::parse(slurp(out_path));
  json assignment_doc;
  assignment_doc["assignment"] = run_doc["assignment"];
  const auto assignment_path = dir.file("assignment.json", assignment_doc.dump());

  const auto result =
      run_cli("cutoffs --instance " + instance_path + " --assignment " + assignment_path);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("# schema: v1") == 0);
  CHECK(result.output.find("job,category,cutoff") != std::string::npos);
  CHECK(result.output.find("x,c,4") != std::string::npos);   // reserved cutoff: b1
  CHECK(result.output.find("y,o,1") != std::string::npos);   // open cutoff: a3
}

TEST_CASE("validation failures exit with code 2 and machine-readable JSON") {
  TempDir dir;
  const auto bad_path = dir.file("bad.json", R"({
    "jobs": [{"id": "x", "capacity": 1, "vr_reserves": {"c": 1},
              "hr_reserves": {"o": {"t": 1}}}],
    "categories": ["c"], "traits": ["t"],
    "individuals": [{"id": "a", "merit": {"x": 1}, "preferences": ["x"]},
                    {"id": "b", "merit": {"x": 1}, "preferences": ["x"]}]
  })");
  const auto result = run_cli("allocate --instance " + bad_path +
                              " --mechanism 2smh-da --out /dev/null");
  CHECK(result.exit_code == 2);
  const auto doc = json::parse(result.output);
  CHECK(doc["error"] == "validation");
  bool hr_issue = false;
  bool tie_issue = false;
  for (const auto& issue : doc["issues"]) {
    if (issue["code"] == "HrExceedsVr") hr_issue = true;
    if (issue["code"] == "TiedMeritScores") tie_issue = true;
  }
  CHECK(hr_issue);
  CHECK(tie_issue);
}

TEST_CASE("usage errors exit with code 2") {
  const auto result = run_cli("allocate --mechanism nope");
  CHECK(result.exit_code == 2);
}

TEST_CASE("oversized oracle inputs exit with code 2 and an error code") {
  TempDir dir;
  const auto result_gen = run_cli("gen --seed 9 --individuals 9 --jobs 2 --out " +
                                  dir.path("big.json"));
  REQUIRE(result_gen.exit_code == 0);
  const auto result = run_cli("oracle --instance " + dir.path("big.json"));
  CHECK(result.exit_code == 2);
  CHECK(json::parse(result.output)["error"] == "instance-too-large");
}

TEST_CASE("gen, allocate, audit round-trips pass for the proposed mechanism") {
  TempDir dir;
  for (int seed = 1; seed <= 5; ++seed) {
    const auto instance_path = dir.path("fuzz_inst.json");
    const auto run_path = dir.path("fuzz_run.json");
    REQUIRE(run_cli("gen --seed " + std::to_string(seed) +
                    " --jobs 3 --individuals 8 --categories 2 --traits 2 --out " +
                    instance_path)
                .exit_code == 0);
    REQUIRE(run_cli("allocate --instance " + instance_path +
                    " --mechanism 2smh-da --out " + run_path)
                .exit_code == 0);

    auto run_doc = json::parse(slurp(run_path));
    json assignment_doc;
    assignment_doc["assignment"] = run_doc["assignment"];
    const auto assignment_path = dir.file("fuzz_assignment.json", assignment_doc.dump());
    const auto audit =
        run_cli("audit --instance " + instance_path + " --assignment " + assignment_path);
    CHECK(audit.exit_code == 0);
    CHECK(json::parse(audit.output)["pass"] == true);
  }
}
