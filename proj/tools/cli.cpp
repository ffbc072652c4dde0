// Copyright 2026 The tmkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tmkit/constraints.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/engine.hpp"
#include "tmkit/io.hpp"
#include "tmkit/script.hpp"

namespace tmkit::cli {
namespace {

// Signals an early exit with a code; the message is already printed.
struct Exit {
  int code;
};

bool color_enabled() {
  const char* v = std::getenv("TMKIT_COLOR");
  return v && std::string(v) == "1";
}

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": error: cannot read file\n";
    throw Exit{kInputError};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, const std::string& file,
                       std::ostream& err) {
  bool color = color_enabled();
  for (const auto& d : diagnostics) err << format_diagnostic(d, file, color) << "\n";
}

Bundle load_bundle(const std::string& path, std::ostream& err) {
  auto result = dsl::load_model(read_file(path, err));
  print_diagnostics(result.diagnostics, path, err);
  if (!result.ok()) throw Exit{kInputError};
  return std::move(*result.value);
}

dsl::Script load_script(const Bundle& bundle, const std::string& path, std::ostream& err) {
  auto parsed = dsl::parse_script(read_file(path, err));
  print_diagnostics(parsed.diagnostics, path, err);
  if (!parsed.ok()) throw Exit{kInputError};
  auto resolved = dsl::resolve_script(bundle, *parsed.value);
  print_diagnostics(resolved, path, err);
  if (has_errors(resolved)) throw Exit{kInputError};
  return std::move(*parsed.value);
}

Trace run(const Bundle& bundle, const dsl::Script& script, const std::string& path,
          std::ostream& err) {
  auto result = engine::run_script(bundle, script);
  if (result.error) {
    err << path << ": runtime error[" << result.error->code() << "]: " << result.error->what()
        << "\n";
    throw Exit{kRuntimeError};
  }
  return std::move(result.trace);
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

int cmd_check(const std::string& model, std::ostream& out, std::ostream& err) {
  Bundle b = load_bundle(model, err);
  out << model << ": ok (" << b.model.thimacs.size() << " thimacs, " << b.model.nodes.size()
      << " stages, " << b.events.size() << " events)\n";
  return kOk;
}

int cmd_run(const std::string& model, const std::string& script_path,
            const std::optional<std::string>& trace_path, bool json, std::ostream& out,
            std::ostream& err) {
  Bundle b = load_bundle(model, err);
  dsl::Script script = load_script(b, script_path, err);
  auto result = engine::run_script(b, script);
  for (const auto& m : result.trace.messages) out << m.text << "\n";
  if (trace_path) {
    std::ofstream f(*trace_path, std::ios::binary);
    if (!f) {
      err << *trace_path << ": error: cannot write file\n";
      return kInputError;
    }
    f << (json ? io::to_json(result.trace) : serialize_trace(result.trace));
  } else if (json) {
    out << io::to_json(result.trace);
  }
  if (result.error) {
    err << script_path << ": runtime error[" << result.error->code()
        << "]: " << result.error->what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}

int cmd_validate(const std::string& model, const std::string& input, std::ostream& out,
                 std::ostream& err) {
  Bundle b = load_bundle(model, err);
  Trace trace;
  if (ends_with(input, ".tms")) {
    trace = run(b, load_script(b, input, err), input, err);
  } else {
    std::string text = read_file(input, err);
    try {
      auto first = text.find_first_not_of(" \t\r\n");
      trace = first != std::string::npos && text[first] == '{' ? io::trace_from_json(text)
                                                                : parse_trace(text);
    } catch (const Error& e) {
      err << input << ": error[" << e.code() << "]: " << e.what() << "\n";
      return kInputError;
    }
  }
  constraints::Report report;
  try {
    report = constraints::evaluate(b, trace);
  } catch (const Error& e) {
    err << model << ": error[" << e.code() << "]: " << e.what() << "\n";
    return kInputError;
  }
  out << constraints::serialize_report(report);
  return report.conforming() ? kOk : kViolations;
}

int cmd_export(const std::string& model, const std::string& view_name, const std::string& format,
               std::ostream& out, std::ostream& err) {
  Bundle b = load_bundle(model, err);
  if (format == "json") {
    out << io::to_json(b);
    return kOk;
  }
  out << io::to_dot(b, *io::parse_view(view_name));
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thinging Machine modeling toolkit", "tmkit"};
  app.require_subcommand(1);

  std::string model;
  std::string script;
  std::string input;
  std::string trace_path;
  bool json = false;
  std::string view = "static";
  std::string format = "dot";

  auto* check = app.add_subcommand("check", "Parse, lower and validate a model");
  check->add_option("model", model, "Model file (.tm)")->required();

  auto* run_cmd = app.add_subcommand("run", "Run a script and print its messages");
  run_cmd->add_option("model", model, "Model file (.tm)")->required();
  run_cmd->add_option("script", script, "Script file (.tms)")->required();
  auto* trace_opt = run_cmd->add_option("--trace", trace_path, "Write the trace to this file");
  run_cmd->add_flag("--json", json, "Use JSON for the trace");

  auto* validate = app.add_subcommand("validate", "Check a trace or script against the constraints");
  validate->add_option("model", model, "Model file (.tm)")->required();
  validate->add_option("input", input, "Trace (text or JSON) or script (.tms)")->required();

  auto* export_cmd = app.add_subcommand("export", "Print a model as DOT or JSON");
  export_cmd->add_option("model", model, "Model file (.tm)")->required();
  export_cmd->add_option("--view", view, "static, events or behavior")
      ->check(CLI::IsMember({"static", "events", "behavior"}));
  export_cmd->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(model, out, err);
    if (*run_cmd) {
      std::optional<std::string> path;
      if (*trace_opt) path = trace_path;
      return cmd_run(model, script, path, json, out, err);
    }
    if (*validate) return cmd_validate(model, input, out, err);
    return cmd_export(model, view, format, out, err);
  } catch (const Exit& e) {
    return e.code;
  }
}

}  // namespace tmkit::cli
