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

#include "negcurve/cli.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "negcurve/error.hpp"
#include "negcurve/klein.hpp"
#include "negcurve/packing.hpp"
#include "negcurve/search.hpp"

namespace negcurve {

namespace {

std::vector<IntVector> integer_rows(const Json& value, const char* key) {
  if (!value.is_array()) {
    throw InvalidInput(std::string("input: \"") + key + "\" must be an array of arrays");
  }
  std::vector<IntVector> rows;
  for (const Json& row : value) {
    if (!row.is_array()) {
      throw InvalidInput(std::string("input: \"") + key + "\" rows must be arrays");
    }
    IntVector out;
    for (const Json& x : row) {
      if (!x.is_number_integer()) {
        throw InvalidInput(std::string("input: \"") + key +
                           "\" entries must be integers, got " + x.dump());
      }
      if (x.is_number_unsigned() && x.get<std::uint64_t>() >
              static_cast<std::uint64_t>(std::numeric_limits<Integer>::max())) {
        throw InvalidInput(std::string("input: \"") + key + "\" entry out of range");
      }
      out.push_back(x.get<Integer>());
    }
    rows.push_back(std::move(out));
  }
  return rows;
}

Json run_report(const std::string& command, const Json& inputs,
                std::optional<std::uint64_t> seed, Json output) {
  Json report;
  report["schema"] = kRunSchema;
  report["command"] = command;
  report["tool_version"] = kToolVersion;
  report["inputs"] = inputs;
  report["inputs_digest"] = digest_hex(dump_json(inputs, -1));
  report["seed"] = seed ? Json(*seed) : Json(nullptr);
  report["output"] = std::move(output);
  return report;
}

Json file_inputs(const std::string& path, const std::string& text) {
  Json inputs;
  inputs["file"] = path;
  inputs["file_digest"] = digest_hex(text);
  return inputs;
}

struct Loaded {
  std::string text;
  InputDocument doc;
  CurveFamily family;
};

Loaded load(const RunOptions& options) {
  if (!options.input) throw InvalidInput(options.command + ": an input file is required");
  std::string text = read_file(*options.input);
  InputDocument doc = parse_input(text);
  CurveFamily family = doc.family();
  return Loaded{std::move(text), std::move(doc), std::move(family)};
}

RunResult cmd_validate(const RunOptions& options) {
  const Loaded in = load(options);
  const ValidationReport report = validate_family(in.family);
  Json output = to_json(report);
  output["labels"] = in.family.labels;
  RunResult result;
  result.report = run_report("validate", file_inputs(*options.input, in.text),
                             std::nullopt, std::move(output));
  result.exit_code = report.overall ? kExitOk : kExitInvalidFamily;
  return result;
}

RunResult cmd_embed(const RunOptions& options) {
  const Loaded in = load(options);
  Json inputs = file_inputs(*options.input, in.text);
  inputs["force"] = options.force;
  const ValidationReport validation = validate_family(in.family);
  RunResult result;
  Json output;
  output["validation"] = to_json(validation);
  if (!validation.overall && !options.force) {
    output["embedded"] = false;
    result.report = run_report("embed", inputs, std::nullopt, std::move(output));
    result.exit_code = kExitInvalidFamily;
    return result;
  }
  const std::vector<KleinPoint> points = map_to_model(in.family);
  Json classes = Json::array();
  bool all_cylinder = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const KleinPoint& p = points[i];
    Json entry;
    entry["index"] = i;
    entry["label"] = in.family.labels[i];
    entry["region"] = std::string(to_string(p.region()));
    entry["point"] = std::vector<double>(p.coords().begin(), p.coords().end());
    entry["in_cylinder"] = check_i(p);
    if (check_i(p)) {
      const CapRep cap = cap_of(p);
      entry["z"] = cap.z();
      entry["theta"] = cap.theta();
    } else {
      all_cylinder = false;
      entry["failed_condition"] = "i";
    }
    classes.push_back(std::move(entry));
  }
  output["embedded"] = true;
  output["classes"] = std::move(classes);
  if (options.figure_data) {
    if (in.family.lattice.rank() != 3) {
      throw DomainError("embed: figure data needs a rank 3 lattice (n = 2)");
    }
    std::ofstream out(*options.figure_data);
    if (!out) throw InvalidInput("embed: cannot write " + *options.figure_data);
    write_figure_data(out, points, in.family.labels);
    output["figure_data"] = *options.figure_data;
  }
  result.report = run_report("embed", inputs, std::nullopt, std::move(output));
  result.exit_code = all_cylinder ? kExitOk : kExitInvalidFamily;
  return result;
}

RunResult cmd_bound(const RunOptions& options) {
  RunResult result;
  if (!options.input) {
    if (!options.n) throw InvalidInput("bound: give --n or an input file");
    if (*options.n < 1) throw DomainError("bound: n must be at least 1");
    Json inputs;
    inputs["n"] = *options.n;
    Json output;
    output["bound"] = to_json(total_bound(*options.n));
    result.report = run_report("bound", inputs, std::nullopt, std::move(output));
    return result;
  }
  const Loaded in = load(options);
  const int n = in.family.lattice.rank() - 1;
  Json output;
  output["bound"] = to_json(total_bound(n));
  const ValidationReport validation = validate_family(in.family);
  output["validation"] = to_json(validation);
  result.exit_code = kExitInvalidFamily;
  if (validation.overall) {
    const PipelineReport pipeline = bound_pipeline(model_family(in.family));
    output["pipeline"] = to_json(pipeline);
    if (pipeline.passed) result.exit_code = kExitOk;
  }
  result.report = run_report("bound", file_inputs(*options.input, in.text),
                             std::nullopt, std::move(output));
  return result;
}

RunResult cmd_search(const RunOptions& options) {
  SearchParams params;
  params.n = options.n.value_or(2);
  params.seed = options.seed;
  params.restarts = options.restarts;
  params.grid_divisions = options.grid;
  validate(params);
  Json inputs;
  inputs["n"] = params.n;
  inputs["restarts"] = params.restarts;
  inputs["grid"] = params.grid_divisions > 0 ? params.grid_divisions
                                             : default_grid_divisions(params.n);
  inputs["random_candidates"] = params.random_candidates;
  RunResult result;
  result.report = run_report("search", inputs, params.seed,
                             to_json(greedy_max(params)));
  return result;
}

RunResult cmd_probe(const RunOptions& options) {
  const int n = options.n.value_or(3);
  if (options.samples < 1) throw DomainError("probe: samples must be >= 1");
  Json inputs;
  inputs["n"] = n;
  inputs["samples"] = options.samples;
  RunResult result;
  result.report = run_report("probe", inputs, options.seed,
                             to_json(equivalence_probe(n, options.samples,
                                                       options.seed, 0)));
  return result;
}

}  // namespace

CurveFamily InputDocument::family() const {
  CurveFamily out{QuadraticLattice(gram), curves, labels};
  if (out.labels.empty()) {
    for (std::size_t i = 0; i < curves.size(); ++i) {
      out.labels.push_back("C" + std::to_string(i + 1));
    }
  }
  if (out.labels.size() != curves.size()) {
    throw InvalidInput("input: " + std::to_string(out.labels.size()) +
                       " labels for " + std::to_string(curves.size()) + " curves");
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (static_cast<int>(curves[i].size()) != out.lattice.rank()) {
      throw InvalidInput("input: curve " + std::to_string(i) + " has length " +
                         std::to_string(curves[i].size()) + ", lattice rank is " +
                         std::to_string(out.lattice.rank()));
    }
  }
  return out;
}

InputDocument parse_input(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("input: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("input: top level must be an object");
  if (!doc.contains("gram")) throw InvalidInput("input: missing \"gram\"");
  if (!doc.contains("curves")) throw InvalidInput("input: missing \"curves\"");
  InputDocument out;
  out.gram = integer_rows(doc["gram"], "gram");
  out.curves = integer_rows(doc["curves"], "curves");
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw InvalidInput("input: \"labels\" must be an array");
    for (const Json& l : doc["labels"]) {
      if (!l.is_string()) throw InvalidInput("input: labels must be strings");
      out.labels.push_back(l.get<std::string>());
    }
  }
  // Construct once so signature and shape errors surface at load time.
  (void)out.family();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_command(const RunOptions& options) {
  try {
    if (options.command == "validate") return cmd_validate(options);
    if (options.command == "embed") return cmd_embed(options);
    if (options.command == "bound") return cmd_bound(options);
    if (options.command == "search") return cmd_search(options);
    if (options.command == "probe") return cmd_probe(options);
    throw InvalidInput("unknown command: " + options.command);
  } catch (const InvalidFamilyError& e) {
    return RunResult{kExitInvalidFamily, nullptr, e.what()};
  } catch (const NumericError& e) {
    return RunResult{kExitNumericFailure, nullptr, e.what()};
  } catch (const InvalidInput& e) {
    return RunResult{kExitMalformedInput, nullptr, e.what()};
  } catch (const DomainError& e) {
    return RunResult{kExitMalformedInput, nullptr, e.what()};
  } catch (const std::exception& e) {
    return RunResult{kExitNumericFailure, nullptr, e.what()};
  }
}

std::string summarize(const RunResult& result) {
  if (result.report.is_null()) return "error: " + result.error + "\n";
  const Json& out = result.report["output"];
  const std::string command = result.report["command"].get<std::string>();
  std::ostringstream s;
  s << command << ": ";
  if (command == "validate") {
    s << (out["overall"].get<bool>() ? "valid" : "invalid") << "\n";
    for (const Json& f : out["failures"]) {
      s << "  failed " << f["condition"].get<std::string>() << " on ("
        << f["first"].get<std::size_t>() << ", " << f["second"].get<std::size_t>()
        << ") margin " << format_double(f["margin"].get<double>()) << "\n";
    }
  } else if (command == "embed") {
    if (!out["embedded"].get<bool>()) {
      s << "family did not validate; rerun with --force\n";
    } else {
      s << out["classes"].size() << " classes\n";
      for (const Json& c : out["classes"]) {
        s << "  " << c["label"].get<std::string>() << " "
          << c["region"].get<std::string>();
        if (c.contains("theta")) s << " theta " << format_double(c["theta"].get<double>());
        s << "\n";
      }
    }
  } else if (command == "bound") {
    const Json& b = out["bound"];
    s << "n " << b["n"].dump() << " total " << b["total"].dump() << " (near "
      << b["near_bound"].dump() << ", far " << b["far_bound"].dump() << ")\n";
    if (out.contains("pipeline")) {
      s << "  pipeline " << (out["pipeline"]["passed"].get<bool>() ? "passed" : "failed")
        << "\n";
    }
  } else if (command == "search") {
    s << "n " << out["n"].dump() << " size " << out["size"].dump() << " certified "
      << out["certificate"]["valid"].dump() << "\n";
  } else if (command == "probe") {
    s << "equivalent " << out["equivalent"].dump() << "\n";
  }
  return s.str();
}

}  // namespace negcurve
