#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "schema_check.hpp"

namespace fs = std::filesystem;
using limitlab::testing::load_json;
using limitlab::testing::validate_schema;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("limitlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int run_cli(const std::string& args) {
  std::string cmd = std::string(LIMITLAB_CLI_PATH) + " " + args + " > /dev/null 2> /dev/null";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  return std::string(std::istreambuf_iterator<char>(is), {});
}

void write(const fs::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::binary);
  os << s;
}

const char* kGoldSpec = R"({
  "name": "gold_demo",
  "learner": {"name": "finapprox_part",
              "params": {"inner": {"name": "urec_cons_part",
                                   "params": {"family": "gold"}}}},
  "text": {"source": "canonical"},
  "target": {"class": "gold", "index": 4},
  "horizon": 200,
  "budget": 220,
  "criteria": ["cons", "part", {"name": "finapprox", "D": [0, 1, 2, 7]}]
})";

}  // namespace

TEST_CASE("run produces trace, verdicts and csv; outputs validate and are stable") {
  TempDir dir;
  write(dir.path / "spec.json", kGoldSpec);
  std::string base = "--out " + dir.path.string() + " run " + (dir.path / "spec.json").string();
  REQUIRE(run_cli(base) == 0);

  auto trace = load_json((dir.path / "gold_demo.trace.json").string());
  std::string err;
  CHECK(validate_schema(trace, load_json(std::string(LIMITLAB_SCHEMA_DIR) + "/trace.schema.json"),
                        &err));
  CHECK(err.empty());

  for (const char* crit : {"cons", "part", "finapprox"}) {
    auto verdict =
        load_json((dir.path / ("gold_demo." + std::string(crit) + ".verdict.json")).string());
    CHECK(validate_schema(verdict,
                          load_json(std::string(LIMITLAB_SCHEMA_DIR) + "/verdict.schema.json"),
                          &err));
    CHECK(err.empty());
    CHECK(verdict.at("status") == "supported");
  }

  std::string csv = slurp(dir.path / "gold_demo.summary.csv");
  CHECK(csv.rfind("learner,class,target,criterion,status,witness,horizon,budget\n", 0) == 0);

  // Byte-identical rerun.
  std::string trace_bytes = slurp(dir.path / "gold_demo.trace.json");
  std::string verdict_bytes = slurp(dir.path / "gold_demo.part.verdict.json");
  REQUIRE(run_cli(base) == 0);
  CHECK(slurp(dir.path / "gold_demo.trace.json") == trace_bytes);
  CHECK(slurp(dir.path / "gold_demo.part.verdict.json") == verdict_bytes);
  CHECK(slurp(dir.path / "gold_demo.summary.csv") == csv);
}

TEST_CASE("run rejects bad specs") {
  TempDir dir;
  write(dir.path / "bad.json", R"({
    "learner": {"name": "no_such_learner"},
    "text": {"source": "canonical"},
    "target": {"class": "gold", "index": 0},
    "horizon": 50,
    "criteria": ["cons"]
  })");
  CHECK(run_cli("--out " + dir.path.string() + " run " + (dir.path / "bad.json").string()) == 2);

  write(dir.path / "bad2.json", R"({
    "learner": {"name": "range"},
    "text": {"source": "canonical"},
    "target": {"class": "no_such_class", "index": 0},
    "horizon": 50,
    "criteria": ["cons"]
  })");
  CHECK(run_cli("--out " + dir.path.string() + " run " + (dir.path / "bad2.json").string()) == 2);
  CHECK(run_cli("--out " + dir.path.string() + " run /nonexistent.json") == 2);
}

TEST_CASE("duel emits audit and outcome records") {
  TempDir dir;
  REQUIRE(run_cli("--out " + dir.path.string() +
                  " duel urec_cons_part evenodd --param n=300 "
                  "--learner-params {\"family\":\"evenodd\"}") == 0);
  auto outcome = load_json((dir.path / "urec_cons_part__evenodd.outcome.json").string());
  std::string err;
  CHECK(validate_schema(outcome,
                        load_json(std::string(LIMITLAB_SCHEMA_DIR) + "/outcome.schema.json"),
                        &err));
  CHECK(outcome.at("alternations").get<int>() >= 1);

  auto audit = load_json((dir.path / "urec_cons_part__evenodd.audit.json").string());
  CHECK(validate_schema(audit, load_json(std::string(LIMITLAB_SCHEMA_DIR) + "/audit.schema.json"),
                        &err));

  REQUIRE(run_cli("--out " + dir.path.string() + " duel tail_union gold --param n=120") == 0);
  auto gold = load_json((dir.path / "tail_union__gold.outcome.json").string());
  CHECK(gold.contains("classification"));

  CHECK(run_cli("--out " + dir.path.string() + " duel tail_union no_such_adversary") == 2);
  CHECK(run_cli("--out " + dir.path.string() + " duel no_such_learner gold") == 2);
}

TEST_CASE("report aggregates verdicts") {
  TempDir dir;
  write(dir.path / "spec.json", kGoldSpec);
  REQUIRE(run_cli("--out " + dir.path.string() + " run " + (dir.path / "spec.json").string()) ==
          0);

  // Aggregation over the produced verdicts.
  REQUIRE(run_cli("--out " + dir.path.string() + " report '" + dir.path.string() +
                  "/*.verdict.json'") == 0);
  std::string csv = slurp(dir.path / "report.csv");
  CHECK(csv.find("part,supported") != std::string::npos);
  CHECK(csv.find("cons,supported") != std::string::npos);

  // Empty glob: empty matrix, success.
  TempDir empty;
  CHECK(run_cli("--out " + empty.path.string() + " report '" + empty.path.string() +
                "/*.verdict.json'") == 0);

  // Malformed files are listed and skipped with exit 1.
  write(dir.path / "broken.verdict.json", "{not json");
  CHECK(run_cli("--out " + dir.path.string() + " report '" + dir.path.string() +
                "/*.verdict.json'") == 1);
}
