#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

// End-to-end runs of the installed binary: run report schema, exit codes and
// the documented examples. The binary path arrives in GENMETRIC_CLI.

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

std::string cli_path() {
  const char* env = std::getenv("GENMETRIC_CLI");
  REQUIRE_MESSAGE(env != nullptr, "GENMETRIC_CLI must point at the binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  std::string command = env_prefix + cli_path() + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.stdout_text.append(buffer.data(), got);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("genmetric_cli_test_" + std::to_string(getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = path_ / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }

 private:
  fs::path path_;
};

const char* kMlNotMml = R"({
  "points": ["1", "2", "3", "4", "5"],
  "d": [
    ["3", "2", "2", "2", "2"],
    ["2", "0", "2", "2", "2"],
    ["2", "2", "0", "2", "2"],
    ["2", "2", "2", "0", "2"],
    ["2", "2", "2", "2", "0"]
  ]
})";

// a genuine two-point metric satisfies all eight classes
const char* kDiscreteMetric = R"({"points":["a","b"],"d":[["0","1"],["1","0"]]})";

const char* kConstOnes = R"({"points":["a","b"],"d":[["1","1"],["1","1"]]})";

}  // namespace

TEST_CASE("classify: report schema, digests and exit codes") {
  TempDir dir;
  std::string metric_file = dir.file("metric.json", kDiscreteMetric);
  auto all_hold = run("classify " + metric_file);
  CHECK(all_hold.exit_code == 0);
  Json report = Json::parse(all_hold.stdout_text);
  CHECK(report["command"] == "classify");
  CHECK(report["exit_code"] == 0);
  std::string digest = report["inputs"]["space"];
  CHECK(digest.rfind("fnv1a:", 0) == 0);
  for (const auto& [name, verdict] : report["result"]["verdicts"].items()) {
    CHECK(verdict["holds"] == true);
  }

  std::string ml_file = dir.file("ml.json", kMlNotMml);
  auto mixed = run("classify " + ml_file);
  CHECK(mixed.exit_code == 1);
  Json mixed_report = Json::parse(mixed.stdout_text);
  CHECK(mixed_report["result"]["verdicts"]["ML"]["holds"] == true);
  CHECK(mixed_report["result"]["verdicts"]["MML"]["witness"]["points"]["x"] == "2");
  CHECK(mixed_report["result"]["verdicts"]["MML"]["witness"]["points"]["z"] == "1");
  CHECK(mixed_report["result"]["verdicts"]["MML"]["witness"]["points"]["y"] == "3");

  auto single = run("classify " + ml_file + " --class ML");
  CHECK(single.exit_code == 0);
  CHECK(Json::parse(single.stdout_text)["result"]["holds"] == true);
}

TEST_CASE("classify: asymmetric input exits 2 and names the pair") {
  TempDir dir;
  std::string bad = dir.file("bad.json",
                             R"({"points":["a","b"],"d":[["0","1"],["2","0"]]})");
  auto result = run("classify " + bad);
  CHECK(result.exit_code == 2);
  Json report = Json::parse(result.stdout_text);
  CHECK(report["exit_code"] == 2);
  std::string error = report["result"]["error"];
  CHECK(error.find("(a, b)") != std::string::npos);
}

TEST_CASE("classify: parametric document and --pretty") {
  TempDir dir;
  std::string grid = dir.file("grid.json", R"({
    "family": "satish_rpm",
    "params": {"a": "3", "alpha": "3"},
    "domain": {"lo": "0", "hi": "3"},
    "step": "1/2"
  })");
  auto result = run("classify " + grid + " --pretty");
  CHECK(result.exit_code == 1);  // RM and METRIC fail on the grid
  CHECK(result.stdout_text.find('\n') != std::string::npos);
  Json report = Json::parse(result.stdout_text);
  CHECK(report["result"]["verdicts"]["RPM"]["holds"] == true);
  CHECK(report["result"]["verdicts"]["RM"]["holds"] == false);
}

TEST_CASE("fixpoint: certificates and exit codes") {
  TempDir dir;
  std::string space = dir.file("star.json", R"({"points":["a","b","c"],
    "d":[["0","1","1"],["1","0","2"],["1","2","0"]]})");
  std::string constant = dir.file("const.json", R"({"map":{"a":"a","b":"a","c":"a"}})");
  std::string identity = dir.file("id.json", R"({"map":{"a":"a","b":"b","c":"c"}})");

  auto ok = run("fixpoint " + space + " " + constant + " --condition banach --x0 b");
  CHECK(ok.exit_code == 0);
  Json cert = Json::parse(ok.stdout_text);
  CHECK(cert["result"]["certificate"]["k_min"] == "0");
  CHECK(cert["result"]["fixed_point"] == "a");
  CHECK(cert["result"]["trace"]["orbit"] == Json::array({"b", "a"}));

  auto not_adm = run("fixpoint " + space + " " + identity + " --condition banach");
  CHECK(not_adm.exit_code == 1);
  CHECK(Json::parse(not_adm.stdout_text)["result"]["certificate"]["k_min"] == "1");

  auto bad = run("fixpoint " + space + " " + identity + " --condition wat");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("converge: the documented examples") {
  TempDir dir;
  std::string space = dir.file("ones.json", kConstOnes);
  std::string const_a = dir.file("const_a.json",
                                 R"({"prefix":["a"],"tail":{"constant":"a"}})");
  std::string alternating = dir.file("alt.json",
                                     R"({"prefix":["a"],"tail":{"periodic":["a","b"]}})");

  auto sigma = run("converge " + space + " " + const_a + " --mode sigma --candidate b");
  CHECK(sigma.exit_code == 0);

  auto cauchy = run("converge " + space + " " + const_a + " --mode cauchy");
  CHECK(cauchy.exit_code == 0);

  // oscillating pair distances on an uneven table
  std::string uneven = dir.file("uneven.json",
                                R"({"points":["a","b"],"d":[["0","1"],["1","2"]]})");
  auto fails = run("converge " + uneven + " " + alternating + " --mode cauchy");
  CHECK(fails.exit_code == 1);
  CHECK(Json::parse(fails.stdout_text)["result"]["outcome"] == "fails");

  auto unknown = run("converge " + space + " " + const_a +
                     " --mode sigma --candidate zz");
  CHECK(unknown.exit_code == 2);

  auto missing_candidate = run("converge " + space + " " + const_a + " --mode sigma");
  CHECK(missing_candidate.exit_code == 2);
}

TEST_CASE("search: witness found and lattice fast-path") {
  TempDir dir;
  std::string query = dir.file("query.json", R"({
    "require": ["ML"], "forbid": ["MML"],
    "max_points": 2, "values": ["0", "1", "2"],
    "mode": {"exhaustive": true}
  })");
  auto found = run("search " + query);
  CHECK(found.exit_code == 0);
  Json witness = Json::parse(found.stdout_text);
  CHECK(witness["result"]["found"] == true);
  CHECK(witness["result"]["space"]["d"] == Json::array({Json::array({"1", "1"}),
                                                        Json::array({"1", "2"})}));

  std::string hopeless = dir.file("hopeless.json", R"({
    "require": ["METRIC"], "forbid": ["ML"],
    "max_points": 2, "values": ["0", "1", "2"],
    "mode": {"exhaustive": true}
  })");
  auto none = run("search " + hopeless);
  CHECK(none.exit_code == 1);
  CHECK(Json::parse(none.stdout_text)["result"]["found"] == false);

  std::string contradictory = dir.file("contra.json", R"({
    "require": ["ML"], "forbid": ["ML"],
    "max_points": 1, "values": ["0"],
    "mode": {"exhaustive": true}
  })");
  CHECK(run("search " + contradictory).exit_code == 2);
}

TEST_CASE("paper-suite: clean run, embedded fixtures, mutation sensitivity") {
  auto clean = run("paper-suite");
  CHECK(clean.exit_code == 0);
  Json report = Json::parse(clean.stdout_text);
  CHECK(report["result"]["failed"] == 0);
  CHECK(report["result"]["items"].size() >= 15);

  auto mutated = run("paper-suite", "GENMETRIC_MUTATION=drop-msigma3-subtraction ");
  CHECK(mutated.exit_code == 1);
  CHECK(Json::parse(mutated.stdout_text)["result"]["failed"].get<int>() > 0);
}

TEST_CASE("converge on a parametric carrier through the CLI") {
  TempDir dir;
  std::string family = dir.file("family.json", R"({
    "family": "abs_plus_c", "params": {"c": "2"},
    "domain": {"lo": "0", "hi": "1", "lo_open": true, "hi_open": true},
    "step": "1/4"
  })");
  // 1/2 + (1/2)^n for n = 2..20: a bare prefix, judged on its window
  std::string prefix = "[";
  long den = 4;  // 2^n, starting at n = 2
  for (int n = 2; n <= 20; ++n) {
    if (n > 2) prefix += ",";
    prefix += "\"" + std::to_string(den / 2 + 1) + "/" + std::to_string(den) + "\"";
    den *= 2;
  }
  prefix += "]";
  std::string seq = dir.file("seq.json", R"({"prefix":)" + prefix + R"(,"tail":null})");
  auto result = run("converge " + family + " " + seq +
                    " --mode symmetric --candidate 1/2 --epsilon 1/100 --window 5");
  CHECK(result.exit_code == 1);  // inconclusive: nothing to certify
  Json verdict = Json::parse(result.stdout_text)["result"];
  CHECK(verdict["outcome"] == "inconclusive");
  CHECK(verdict["inconclusive"] == true);
}

TEST_CASE("identical invocations produce identical reports") {
  TempDir dir;
  std::string ml_file = dir.file("ml.json", kMlNotMml);
  auto first = run("classify " + ml_file);
  auto second = run("classify " + ml_file);
  CHECK(first.exit_code == second.exit_code);
  CHECK(first.stdout_text == second.stdout_text);

  std::string query = dir.file("query.json", R"({
    "require": ["ML"], "forbid": ["MML"],
    "max_points": 3, "values": ["0", "1", "2"],
    "mode": {"seed": 9, "budget": 2000}
  })");
  auto r1 = run("search " + query);
  auto r2 = run("search " + query);
  CHECK(r1.stdout_text == r2.stdout_text);
}

TEST_CASE("missing files and missing subcommands exit 2") {
  CHECK(run("classify /nonexistent/space.json").exit_code == 2);
  CHECK(run("").exit_code == 2);
}
