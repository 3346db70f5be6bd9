#include "common.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

const std::string kCli = CATFIELD_CLI;
const std::filesystem::path kData = CATFIELD_DATA_DIR;
const std::filesystem::path kFixtures = CATFIELD_FIXTURE_DIR;

struct Run {
  int status = -1;
  std::string out;
};

/// Runs the CLI with `args`; stderr is folded into the captured output.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + kCli + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return (kData / name).string(); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("validate prints the category summary") {
  const Run r = run("validate " + data("indiscrete2.json"));
  CHECK(r.status == 0);
  CHECK(r.out.rfind("2 objects, 4 arrows, category axioms OK", 0) == 0);
}

TEST_CASE("usage and module errors map to exit codes") {
  CHECK(run("").status == 2);
  CHECK(run("validate").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("validate " + data("indiscrete2.json") + " --format xml").status == 2);

  const Run missing = run("validate " + data("missing.json"));
  CHECK(missing.status == 1);
  CHECK(missing.out.find("error: io.ParseError") != std::string::npos);

  const Run bad_state = run("state check " + data("z2_bad_state.json"));
  CHECK(bad_state.status == 1);
  CHECK(bad_state.out.find("error: states.NotPSD") != std::string::npos);

  const Run bad_env = run("center " + data("indiscrete2.json"), "CATFIELD_TOLERANCE=abc");
  CHECK(bad_env.status == 1);
  CHECK(bad_env.out.find("error: cli.BadTolerance") != std::string::npos);
}

TEST_CASE("walk output matches the committed oracle fixture") {
  const Run r = run("walk " + data("hadamard4.json") + " --steps 3");
  REQUIRE(r.status == 0);
  std::ifstream f(kFixtures / "hadamard4_steps3.csv");
  std::stringstream expected;
  expected << f.rdbuf();
  const auto got = parse_csv(r.out);
  const auto want = parse_csv(expected.str());
  REQUIRE(got.size() == want.size());
  CHECK(got[0] == want[0]);
  for (std::size_t i = 1; i < got.size(); ++i) {
    CAPTURE(i);
    REQUIRE(got[i].size() == 4);
    CHECK(got[i][0] == want[i][0]);
    CHECK(got[i][1] == want[i][1]);
    CHECK(std::abs(std::stod(got[i][2]) - std::stod(want[i][2])) <= 1e-9);
    CHECK(std::abs(std::stod(got[i][3]) - std::stod(want[i][3])) <= 1e-9);
  }
}

TEST_CASE("demo output is reproducible and reports passes") {
  const Run a = run("demo minkowski --t 3 --x 3 --format json");
  const Run b = run("demo minkowski --t 3 --x 3 --format json");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  const auto j = catfield::io::Json::parse(a.out);
  for (const auto& row : j.at("theorems")) CHECK(row.at("result") == "PASS");
  const Run other_seed = run("demo minkowski --t 3 --x 3 --format json --seed 5");
  CHECK(other_seed.status == 0);
}

TEST_CASE("reports can be written to a file") {
  const auto out = std::filesystem::temp_directory_path() / "catfield_cli_center.json";
  std::filesystem::remove(out);
  const Run r = run("center " + data("indiscrete2.json") + " --output " + out.string());
  CHECK(r.status == 0);
  const auto j = catfield::io::Json::parse(std::ifstream(out));
  CHECK(j.at("dimension") == 1);
  std::filesystem::remove(out);
}

TEST_CASE("remaining subcommands") {
  const Run mul = run("algebra mul " + data("elem_a.json") + " " + data("elem_b.json") + " --format json");
  CHECK(mul.status == 0);
  const auto m = catfield::io::Json::parse(mul.out);
  CHECK(m.at("weights").at("a2_2") == catfield::io::Json::array({0.0, 6.0}));

  const Run gns = run("gns " + data("indiscrete2.json") + " " + data("trace_state.json") + " --format json");
  CHECK(gns.status == 0);
  CHECK(catfield::io::Json::parse(gns.out).at("dimension") == 4);

  const Run rel = run("relevant " + data("minkowski3x3.json") + " --objects '1,1'");
  CHECK(rel.status == 0);
  CHECK(rel.out.find("classification total and consistent") != std::string::npos);

  const Run local = run("local-algebra " + data("minkowski3x3.json") + " --objects '0,0;1,0;1,1;2,0' --involution");
  CHECK(local.status == 0);
  const Run not_region = run("local-algebra " + data("minkowski3x3.json") + " --objects '0,0;2,0'");
  CHECK(not_region.status == 1);
  CHECK(not_region.out.find("causal.NotARegion") != std::string::npos);

  const Run theorems = run("check-theorems " + data("minkowski3x3.json"));
  CHECK(theorems.status == 0);
  CHECK(theorems.out.find("FAIL") == std::string::npos);

  const Run state = run("state check " + data("vector_state.json") + " --format csv");
  CHECK(state.status == 0);
  CHECK(state.out.rfind("object,min_eigenvalue,norm", 0) == 0);
}
