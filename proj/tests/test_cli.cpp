// Copyright 2026 The mlgdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mlg/io.hpp"
#include "random_instance.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MLG_FIXTURE_DIR;

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "mlg_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const auto log = scratch() / "out.txt";
  const std::string cmd = std::string("\"") + MLG_CLI_PATH + "\" " + args + " > \"" +
                          log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(log);
  return r;
}

std::string fixture(const std::string& name) { return "\"" + (kFixtures / name).string() + "\""; }

}  // namespace

TEST_CASE("solve T1") {
  const auto out = scratch() / "t1.solution.json";
  const auto r = run("solve " + fixture("t1.json") + " -o \"" + out.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("objective: 14") != std::string::npos);
  const auto report = mlg::parse_solution_text(slurp(out));
  CHECK(report.objective == doctest::Approx(14.0));
  CHECK(report.channels.size() == 4);

  CHECK(run("solve " + fixture("t1.json") + " --formulation link-path --k 2").code == 0);
  const auto single = run("solve " + fixture("t1.json") + " --single-homing");
  CHECK(single.code == 0);
  CHECK(single.out.find("u1=3") != std::string::npos);
}

TEST_CASE("file options and flag overrides") {
  const auto r = run("solve " + fixture("t1_uncapacitated.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("objective: 18") != std::string::npos);
  const auto cap = run("solve " + fixture("t1_uncapacitated.json") + " --mode capacitated");
  CHECK(cap.out.find("objective: 14") != std::string::npos);
}

TEST_CASE("validate, oracle and export-dot") {
  CHECK(run("validate " + fixture("t1.json")).code == 0);
  const auto oracle = run("oracle " + fixture("t1.json"));
  CHECK(oracle.code == 0);
  CHECK(oracle.out.find("objective: 14") != std::string::npos);

  const auto dot = scratch() / "t1.dot";
  CHECK(run("export-dot " + fixture("t1.json") + " -o \"" + dot.string() + "\"").code == 0);
  CHECK(slurp(dot).rfind("graph \"mlg\"", 0) == 0);
}

TEST_CASE("infeasible instance exits 1 with a certificate") {
  const auto r = run("solve " + fixture("t1_overloaded.json"));
  CHECK(r.code == 1);
  CHECK(r.out.find("certificate:") != std::string::npos);
  CHECK(r.out.find("productivity[s1]") != std::string::npos);
  CHECK(run("oracle " + fixture("t1_overloaded.json")).code == 1);
}

TEST_CASE("invalid input exits 2") {
  const auto bad = scratch() / "bad.json";
  std::ofstream(bad) << "{\"subscribers\": [}";
  CHECK(run("solve \"" + bad.string() + "\"").code == 2);
  CHECK(run("validate \"" + bad.string() + "\"").code == 2);
  CHECK(run("solve " + fixture("t1.json") + " --k 0").code == 2);
  CHECK(run("solve " + fixture("t1.json") + " --mode sideways").code == 2);
  CHECK(run("frobnicate").code == 2);

  auto p = mlg::testing::t1_problem();
  p.service.productivity = 8.0;
  const auto mismatch = scratch() / "mismatch.json";
  mlg::write_problem({p, {}}, mismatch);
  CHECK(run("solve \"" + mismatch.string() + "\"").code == 2);
  CHECK(run("solve \"" + mismatch.string() + "\" --productivity-at-least").code == 0);
  p.service.productivity = 11.0;
  mlg::write_problem({p, {}}, mismatch);
  CHECK(run("solve \"" + mismatch.string() + "\" --productivity-at-least").code == 2);
}

TEST_CASE("I/O failures exit 3") {
  CHECK(run("solve " + fixture("t1.json") + " -o /nonexistent-dir/x/out.json").code == 3);
  CHECK(run("export-dot " + fixture("t1.json") + " -o /nonexistent-dir/x/t1.dot").code == 3);
  CHECK(run("solve \"" + (scratch() / "missing.json").string() + "\"").code == 3);
}

TEST_CASE("oracle limits exit 4") {
  mlg::testing::RandomSpec spec;
  spec.min_subscribers = 4;
  spec.max_subscribers = 4;
  const auto big = scratch() / "big.json";
  mlg::write_problem({mlg::testing::random_problem(spec, 7), {}}, big);
  CHECK(run("oracle \"" + big.string() + "\"").code == 4);
}
