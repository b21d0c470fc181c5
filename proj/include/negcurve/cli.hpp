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

// Command implementations behind the negcurve executable. Each command builds
// a versioned JSON run report; the executable only parses flags and prints.

#ifndef NEGCURVE_CLI_HPP_
#define NEGCURVE_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negcurve/conditions.hpp"
#include "negcurve/json_io.hpp"

namespace negcurve {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kRunSchema = "negcurve.run/1";

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidFamily = 1,
  kExitMalformedInput = 2,
  kExitNumericFailure = 3,
};

// {"gram": [[...]], "curves": [[...]], "labels": [...]} with integer entries.
struct InputDocument {
  std::vector<IntVector> gram;
  std::vector<IntVector> curves;
  std::vector<std::string> labels;

  CurveFamily family() const;
};

// Throw InvalidInput on malformed text and SignatureError on a bad gram.
InputDocument parse_input(std::string_view text);
std::string read_file(const std::string& path);

struct RunOptions {
  std::string command;  // validate, embed, bound, search or probe
  std::optional<std::string> input;
  std::optional<int> n;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  int restarts = 8;
  int grid = 0;
  bool force = false;
  std::optional<std::string> figure_data;
};

struct RunResult {
  int exit_code = kExitOk;
  Json report;         // null when the command could not start
  std::string error;   // set for exit codes 2 and 3
};

// Never throws for bad input; failures map onto the exit codes above.
RunResult run_command(const RunOptions& options);

// Short text summary of a report for the non --json mode.
std::string summarize(const RunResult& result);

}  // namespace negcurve

#endif  // NEGCURVE_CLI_HPP_
