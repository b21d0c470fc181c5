// Copyright 2026 The negcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "negcurve/cli.hpp"
#include "negcurve/error.hpp"
#include "oracles.hpp"

using namespace negcurve;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "negcurve_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kBl3 = R"({"gram": [[1,0,0,0],[0,-1,0,0],[0,0,-1,0],[0,0,0,-1]],
  "curves": [[0,1,0,0],[0,0,1,0],[0,0,0,1],[1,-1,-1,0],[1,-1,0,-1],[1,0,-1,-1]],
  "labels": ["E1","E2","E3","L-E1-E2","L-E1-E3","L-E2-E3"]})";

RunResult run(const std::string& command, const std::string& file) {
  RunOptions o;
  o.command = command;
  o.input = file;
  return run_command(o);
}

int shell(const std::string& args) {
  const std::string cmd = std::string(NEGCURVE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("input parsing") {
  const InputDocument d = parse_input(kBl3);
  CHECK(d.gram.size() == 4);
  CHECK(d.curves.size() == 6);
  CHECK(d.labels[3] == "L-E1-E2");
  CHECK(parse_input(R"({"gram": [[1,0],[0,-1]], "curves": [[0,1]]})").family().labels[0] == "C1");
  CHECK_THROWS_AS(parse_input("{"), InvalidInput);
  CHECK_THROWS_AS(parse_input(R"({"gram": [[1.5,0],[0,-1]], "curves": [[0,1]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_input(R"({"curves": [[0,1]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_input(R"({"gram": [[1,0],[0,-1]], "curves": [[0,1,0]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_input(R"({"gram": [[1,0],[0,-1]], "curves": [[0,1]], "labels": ["a","b"]})"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_input(R"({"gram": [[1,0,0],[0,1,0],[0,0,-1]], "curves": [[0,0,1]]})"),
                  SignatureError);
}

TEST_CASE("validate") {
  const RunResult ok = run("validate", write("bl3.json", kBl3));
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.report["schema"] == kRunSchema);
  CHECK(ok.report["tool_version"] == kToolVersion);
  CHECK(ok.report["output"]["overall"] == true);

  const RunResult dup = run("validate", write("dup.json",
      R"({"gram": [[1,0,0],[0,-1,0],[0,0,-1]], "curves": [[0,1,0],[0,1,0]]})"));
  CHECK(dup.exit_code == kExitInvalidFamily);
  const Json& f = dup.report["output"]["failures"][0];
  CHECK(f["first"] == 0);
  CHECK(f["second"] == 1);
  CHECK(f["condition"] == "II");

  const RunResult sig = run("validate", write("sig.json",
      R"({"gram": [[1,0,0],[0,1,0],[0,0,-1]], "curves": [[0,0,1]]})"));
  CHECK(sig.exit_code == kExitMalformedInput);
  CHECK(sig.error.find("++-") != std::string::npos);

  CHECK(run("validate", (scratch() / "missing.json").string()).exit_code == kExitMalformedInput);
}

TEST_CASE("embed") {
  const RunResult one = run("embed", write("one.json",
      R"({"gram": [[1,0],[0,-1]], "curves": [[0,1]]})"));
  CHECK(one.exit_code == kExitOk);
  CHECK(one.report["output"]["classes"][0]["theta"].get<double>() ==
        doctest::Approx(oracle::kPi / 2));

  const RunResult bl3 = run("embed", write("bl3.json", kBl3));
  CHECK(bl3.exit_code == kExitOk);
  const Json& line = bl3.report["output"]["classes"][3];
  CHECK(line["region"] == "cylinder");
  // theta = arccos of x0 after scaling the standard vector (1, -1, -1, 0) to
  // unit spatial part.
  const std::vector<double> v{1, -1, -1, 0};
  const double spatial = std::sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  CHECK(std::abs(line["theta"].get<double>() - std::acos(v[0] / spatial)) < 1e-12);
  // cross-check: C^2 = -sin^2(theta) after the same scaling
  CHECK(std::abs(oracle::minkowski(v, v) / (spatial * spatial) +
                 std::pow(std::sin(line["theta"].get<double>()), 2)) < 1e-12);

  const std::string ample = write("ample.json", R"({"gram": [[1,0,0],[0,-1,0],[0,0,-1]], "curves": [[1,0,0]]})");
  const RunResult refused = run("embed", ample);
  CHECK(refused.exit_code == kExitInvalidFamily);
  CHECK(refused.report["output"]["embedded"] == false);
  RunOptions forced;
  forced.command = "embed";
  forced.input = ample;
  forced.force = true;
  const RunResult f = run_command(forced);
  CHECK(f.exit_code == kExitInvalidFamily);
  CHECK(f.report["output"]["classes"][0]["in_cylinder"] == false);
  CHECK(f.report["output"]["classes"][0]["region"] == "disc_plus");
  CHECK(f.report["output"]["classes"][0]["failed_condition"] == "i");
}

TEST_CASE("embed figure data") {
  RunOptions o;
  o.command = "embed";
  o.input = write("p2.json",
      R"({"gram": [[1,0,0],[0,-1,0],[0,0,-1]], "curves": [[0,1,0],[0,0,1],[1,-1,-1]]})");
  o.figure_data = (scratch() / "fig.txt").string();
  const RunResult r = run_command(o);
  CHECK(r.exit_code == kExitOk);
  std::ifstream in(*o.figure_data);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("# orth_disc 2 C3") != std::string::npos);

  o.input = write("bl3.json", kBl3);
  CHECK(run_command(o).exit_code == kExitMalformedInput);
}

TEST_CASE("bound") {
  RunOptions o;
  o.command = "bound";
  o.n = 2;
  const RunResult two = run_command(o);
  CHECK(two.exit_code == kExitOk);
  CHECK(two.report["output"]["bound"]["total"] == 30);
  CHECK(two.report["output"]["bound"]["near_bound"] == 8);
  CHECK(two.report["output"]["bound"]["far_bound"] == 7);
  o.n = 1;
  CHECK(run_command(o).report["output"]["bound"]["total"] == 12);
  o.n = 0;
  CHECK(run_command(o).exit_code == kExitMalformedInput);

  const RunResult file = run("bound", write("bl3.json", kBl3));
  CHECK(file.exit_code == kExitOk);
  CHECK(file.report["output"]["pipeline"]["passed"] == true);
  CHECK(file.report["output"]["bound"]["n"] == 3);

  const RunResult dup = run("bound", write("dup.json",
      R"({"gram": [[1,0,0],[0,-1,0],[0,0,-1]], "curves": [[0,1,0],[0,1,0]]})"));
  CHECK(dup.exit_code == kExitInvalidFamily);
}

TEST_CASE("search") {
  RunOptions o;
  o.command = "search";
  o.n = 2;
  const RunResult a = run_command(o);
  CHECK(a.exit_code == kExitOk);
  CHECK(a.report["output"]["size"].get<int>() >= 4);
  CHECK(dump_json(a.report) == dump_json(run_command(o).report));
  o.n = 3;
  CHECK(run_command(o).report["output"]["size"].get<int>() >= 6);
  o.n = 1;
  CHECK(run_command(o).exit_code == kExitMalformedInput);
}

TEST_CASE("probe") {
  RunOptions o;
  o.command = "probe";
  o.n = 3;
  o.samples = 1;
  const RunResult one = run_command(o);
  CHECK(one.exit_code == kExitOk);
  CHECK(one.report["output"]["samples"] == 1);
  o.samples = 5000;
  o.seed = 9;
  CHECK(dump_json(run_command(o).report) == dump_json(run_command(o).report));
  o.samples = 0;
  CHECK(run_command(o).exit_code == kExitMalformedInput);
}

TEST_CASE("executable exit codes") {
  const std::string bl3 = write("bl3.json", kBl3);
  CHECK(shell("validate " + bl3) == 0);
  CHECK(shell("validate " + write("dup.json",
      R"({"gram": [[1,0,0],[0,-1,0],[0,0,-1]], "curves": [[0,1,0],[0,1,0]]})")) == 1);
  CHECK(shell("validate " + write("bad.json", "not json")) == 2);
  CHECK(shell("frobnicate") == 2);
  CHECK(shell("bound --n 2 --json") == 0);
  CHECK(shell("search --n 2 --restarts 2") == 0);
  CHECK(shell("--help") == 0);
}
