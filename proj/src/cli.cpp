/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include "cedl/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cedl/codegen.hpp"
#include "cedl/engine.hpp"
#include "cedl/kb.hpp"
#include "cedl/parser.hpp"
#include "cedl/semantics.hpp"

namespace cedl::cli
{

namespace
{

namespace fs = std::filesystem;

/// Signals an early exit with the given code; the message was already printed.
struct Exit
{
  int code;
};

std::string read_file(const std::string & path, std::ostream & err)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "cedl: cannot read '" << path << "'\n";
    throw Exit{kIo};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    err << "cedl: error while reading '" << path << "'\n";
    throw Exit{kIo};
  }
  return ss.str();
}

/// Writes through a temporary sibling and renames it over `path`.
void write_file_atomically(const std::string & path, const std::string & content, std::ostream & err)
{
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) {
      err << "cedl: cannot write '" << path << "'\n";
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Exit{kIo};
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    err << "cedl: cannot write '" << path << "': " << ec.message() << "\n";
    fs::remove(tmp, ec);
    throw Exit{kIo};
  }
}

void print(
  std::ostream & err, const std::string & file, std::size_t line, std::size_t col,
  const Diagnostic & d)
{
  err << file << ':' << line << ':' << col << ": " << to_string(d.severity) << ' ' << d.code << ": "
      << d.message << '\n';
}

/// Where each declaration came from, for diagnostics.
struct SourceMap
{
  std::map<std::string, std::pair<std::string, ModelAst::Location>> declarations;
  std::string config_file;
  std::optional<StructuralConfig> config;
  std::string fallback;

  void report(std::ostream & err, const Diagnostic & d) const
  {
    if (auto it = declarations.find(d.declaration); it != declarations.end()) {
      print(err, it->second.first, it->second.second.line, it->second.second.column, d);
    } else if (!config_file.empty() && (d.code == codes::kConfigParse ||
                                        (config && config->find(d.declaration)))) {
      print(err, config_file, 1, 1, d);
    } else {
      print(err, fallback, 1, 1, d);
    }
  }
};

struct Compiled
{
  CompiledModel model;
  SourceMap sources;
};

Compiled compile(
  const std::vector<std::string> & model_files, const std::string & config_file, std::ostream & err)
{
  Compiled c;
  c.sources.fallback = model_files.front();
  c.sources.config_file = config_file;

  std::vector<ModelAst> parsed;
  bool parse_failed = false;
  for (const auto & path : model_files) {
    const std::string text = read_file(path, err);
    auto result = parse_model(text);
    if (!result.ok()) {
      for (const auto & e : result.errors) {
        print(err, path, e.pos.line, e.pos.column, error(codes::kParse, e.message));
      }
      parse_failed = true;
      continue;
    }
    const ModelAst & m = *result.model;
    auto note = [&](const auto & decls) {
      for (const auto & d : decls) {
        c.sources.declarations.emplace(
          d.name.str(), std::make_pair(path, m.location_of(d.name.str()).value_or(ModelAst::Location{})));
      }
    };
    note(m.source_types());
    note(m.stubs());
    note(m.events());
    note(m.complex_events());
    parsed.push_back(std::move(*result.model));
  }

  StructuralConfig config;
  if (!config_file.empty()) {
    auto loaded = load_structural_config(read_file(config_file, err));
    if (!loaded.ok()) {
      for (const auto & d : loaded.diagnostics) {
        print(err, config_file, 1, 1, d);
      }
      throw Exit{kInvalid};
    }
    config = std::move(*loaded.value);
  }
  c.sources.config = config;
  if (parse_failed) {
    throw Exit{kInvalid};
  }

  auto merged = merge_models(parsed);
  if (!merged.ok()) {
    for (const auto & d : merged.diagnostics) {
      c.sources.report(err, d);
    }
    throw Exit{kInvalid};
  }
  auto resolved = resolve(*merged.value, config);
  for (const auto & d : resolved.diagnostics) {
    c.sources.report(err, d);
  }
  if (!resolved.ok()) {
    throw Exit{kInvalid};
  }
  c.model = std::move(*resolved.value);
  return c;
}

int cmd_check(const std::vector<std::string> & models, const std::string & config, std::ostream & out, std::ostream & err)
{
  auto c = compile(models, config, err);
  out << "ok: " << c.model.atomic_events.size() << " atomic event(s), "
      << c.model.complex_events.size() << " complex event(s)\n";
  return kSuccess;
}

int cmd_expand(
  const std::string & generic, const std::string & domain, const std::string & mapping,
  const std::string & out_path, std::ostream & out, std::ostream & err)
{
  auto kb = load_kb(read_file(generic, err), read_file(domain, err), read_file(mapping, err));
  for (const auto & d : kb.diagnostics) {
    print(err, generic, 1, 1, d);
  }
  if (!kb.ok()) {
    return kInvalid;
  }
  auto expanded = expand_to_cedl(*kb.value);
  for (const auto & d : expanded.diagnostics) {
    print(err, generic, 1, 1, d);
  }
  if (!expanded.ok()) {
    return kInvalid;
  }
  write_file_atomically(out_path, pretty_print(*expanded.value), err);

  const auto joined = join(*kb.value);
  for (const auto & [d, g] : joined.pairs) {
    out << "mapped: " << d.name << " -> " << concept_kind(g) << ' ' << concept_name(g) << '\n';
  }
  for (const auto & d : joined.unmapped) {
    out << "unmapped: " << d.name << '\n';
  }
  for (const auto & line : structure_summary(*kb.value)) {
    out << line << '\n';
  }
  out << "wrote " << expanded.value->source_types().size() << " source type(s) and "
      << expanded.value->stubs().size() << " event stub(s) to " << out_path << '\n';
  return kSuccess;
}

int cmd_run(
  const std::vector<std::string> & models, const std::string & config, const std::string & log_path,
  const DetectionConfig & cfg, const std::string & out_path, std::ostream & out, std::ostream & err)
{
  if (auto bad = cfg.validate()) {
    err << "cedl: " << bad->message << '\n';
    return kUsage;
  }
  auto c = compile(models, config, err);
  auto log = parse_observation_log(read_file(log_path, err));
  for (std::size_t i = 0; i < log.diagnostics.size(); ++i) {
    print(err, log_path, log.skipped_lines[i], 1, log.diagnostics[i]);
  }

  const auto result = detect(c.model, log.observations, cfg);
  for (const auto & d : result.diagnostics) {
    c.sources.report(err, d);
  }
  if (has_errors(result.diagnostics)) {
    return kInvalid;
  }
  write_file_atomically(out_path, to_jsonl(result), err);
  for (const auto & [name, instances] : result.instances) {
    out << name << ' ' << instances.size() << '\n';
  }
  out << "malformed log lines: " << log.diagnostics.size() << '\n';
  return kSuccess;
}

int cmd_gen(
  const std::vector<std::string> & models, const std::string & config, const std::string & out_path,
  std::ostream & out, std::ostream & err)
{
  auto c = compile(models, config, err);
  const auto units = generate(c.model);
  write_file_atomically(out_path, render_epl(units), err);
  std::size_t supported = 0;
  for (const auto & u : units) {
    supported += u.supported ? 1 : 0;
  }
  out << "supported: " << supported << ", unsupported: " << units.size() - supported << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Compiler and detection engine for the Complex Event Description Language", "cedl"};
  app.set_version_flag("--version", std::string("cedl ") + kVersion);
  app.require_subcommand(1);

  std::vector<std::string> models;
  std::string config;
  std::string out_path;

  auto * check = app.add_subcommand("check", "Parse and resolve models, reporting diagnostics");
  check->add_option("models", models, ".cedl files")->required();
  check->add_option("-c,--config", config, "structural configuration (JSON)");

  std::string generic;
  std::string domain;
  std::string mapping;
  auto * expand = app.add_subcommand("expand", "Generate CEDL declarations from a knowledge base");
  expand->add_option("--generic", generic, "generic.json")->required();
  expand->add_option("--domain", domain, "domain.json")->required();
  expand->add_option("--mapping", mapping, "mapping.json")->required();
  expand->add_option("-o,--out", out_path, "output .cedl file")->required();

  std::string log_path;
  DetectionConfig cfg;
  auto * run_cmd = app.add_subcommand("run", "Detect events in an observation log");
  run_cmd->add_option("models", models, ".cedl files")->required();
  run_cmd->add_option("-c,--config", config, "structural configuration (JSON)");
  run_cmd->add_option("-l,--log", log_path, "observation log (JSON Lines)")->required();
  run_cmd->add_option("--max-gap", cfg.max_gap, "largest sample gap inside a run, seconds");
  run_cmd->add_option("--tolerance", cfg.point_tolerance, "CONCURRENT point tolerance, seconds");
  run_cmd->add_option("--horizon", cfg.horizon, "largest span of a combined tuple, seconds");
  run_cmd->add_option("-o,--out", out_path, "detections (JSON Lines)")->required();

  auto * gen = app.add_subcommand("gen", "Generate EPL statements");
  gen->add_option("models", models, ".cedl files")->required();
  gen->add_option("-c,--config", config, "structural configuration (JSON)");
  gen->add_option("-o,--out", out_path, "output .epl file")->required();

  std::vector<std::string> argv_storage{"cedl"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto & a : argv_storage) {
    argv.push_back(a.data());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion &) {
    out << "cedl " << kVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError & e) {
    err << "cedl: " << e.what() << '\n' << "run 'cedl --help' for usage\n";
    return kUsage;
  }

  try {
    if (check->parsed()) {
      return cmd_check(models, config, out, err);
    }
    if (expand->parsed()) {
      return cmd_expand(generic, domain, mapping, out_path, out, err);
    }
    if (run_cmd->parsed()) {
      return cmd_run(models, config, log_path, cfg, out_path, out, err);
    }
    return cmd_gen(models, config, out_path, out, err);
  } catch (const Exit & e) {
    return e.code;
  }
}

}  // namespace cedl::cli
