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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "negcurve/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Negative curve families, cap models and packing bounds"};
  app.require_subcommand(1);
  negcurve::RunOptions opt;
  bool json = false;
  app.add_flag("--json", json, "Print the full JSON run report");

  auto* validate = app.add_subcommand("validate", "Check conditions I, II, III");
  auto* embed = app.add_subcommand("embed", "Map classes into the Klein model");
  auto* bound = app.add_subcommand("bound", "Explicit packing bound");
  auto* search = app.add_subcommand("search", "Search for large compatible cap families");
  auto* probe = app.add_subcommand("probe", "Random lattice/model agreement probe");

  std::string input;
  for (auto* sub : {validate, embed}) {
    sub->add_option("file", input, "Input JSON document")->required();
  }
  embed->add_flag("--force", opt.force, "Embed even if validation fails");
  std::string figure;
  embed->add_option("--figure-data", figure, "Write n = 2 point streams to PATH");

  bound->add_option("file", input, "Input JSON document");
  int n = 0;
  bound->add_option("--n", n, "Dimension n (lattice rank n + 1)");
  search->add_option("--n", n, "Dimension n")->default_val(2);
  probe->add_option("--n", n, "Dimension n")->default_val(3);

  for (auto* sub : {search, probe}) {
    sub->add_option("--seed", opt.seed, "Master seed")->default_val(1);
  }
  search->add_option("--restarts", opt.restarts, "Greedy restarts")->default_val(8);
  search->add_option("--grid", opt.grid,
                     "Grid resolution pi / GRID; 0 picks by dimension")
      ->default_val(0);
  probe->add_option("--samples", opt.samples, "Space-like pairs to draw")
      ->default_val(100000);
  for (auto* sub : {validate, embed, bound, search, probe}) {
    sub->add_flag("--json", json, "Print the full JSON run report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : negcurve::kExitMalformedInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  opt.command = chosen->get_name();
  if (!input.empty()) opt.input = input;
  if (!figure.empty()) opt.figure_data = figure;
  if (chosen != validate && chosen != embed &&
      (chosen != bound || chosen->count("--n") > 0)) {
    opt.n = n;
  }

  const negcurve::RunResult result = negcurve::run_command(opt);
  if (result.report.is_null()) {
    std::cerr << "negcurve: " << result.error << "\n";
  } else if (json) {
    std::cout << negcurve::dump_json(result.report) << "\n";
  } else {
    std::cout << negcurve::summarize(result);
  }
  return result.exit_code;
}
