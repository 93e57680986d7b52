// Copyright 2026 The sketchsynth Authors.
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

#include "cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "service.h"
#include "sketchsynth/corpus.h"
#include "sketchsynth/documents.h"
#include "sketchsynth/dot.h"
#include "sketchsynth/error.h"
#include "sketchsynth/executor.h"
#include "sketchsynth/pipeline.h"

#ifndef SKETCHSYNTH_DEFAULT_DATA_DIR
#define SKETCHSYNTH_DEFAULT_DATA_DIR "data"
#endif

namespace sketchsynth::tools {

namespace {

std::string EnvOr(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : std::move(fallback);
}

struct DomainFlags {
  std::string domain_path;
  std::string lexicon_path;

  void Add(CLI::App* app) {
    app->add_option("--domain", domain_path, "Domain document (default: bundled)");
    app->add_option("--lexicon", lexicon_path, "Lexicon document (default: bundled)");
  }

  Domain Load() const {
    if (domain_path.empty() && lexicon_path.empty()) return DefaultDomain();
    DomainDocument d = DecodeDomain(domain_path.empty()
                                        ? std::string(BundledDomainDocument())
                                        : ReadFile(domain_path));
    LexiconDocument l = DecodeLexicon(lexicon_path.empty()
                                          ? std::string(BundledLexiconDocument())
                                          : ReadFile(lexicon_path));
    return LoadDomain(d, l);
  }
};

void Emit(std::ostream& out, const std::string& path, const std::string& doc) {
  if (path.empty() || path == "-") {
    out << doc;
  } else {
    WriteFile(path, doc);
  }
}

int Report(std::ostream& err, const Error& e) {
  if (auto* s = dynamic_cast<const SynthesisError*>(&e)) {
    err << "error: recording '" << s->recording() << "' failed at " << s->stage()
        << " (" << ErrorCodeName(s->cause()) << "): " << s->detail() << "\n";
    return kExitSynthesis;
  }
  if (auto* f = dynamic_cast<const RuntimeFault*>(&e)) {
    err << "runtime fault in state " << f->state() << ": " << f->what() << "\n";
    return kExitSynthesis;
  }
  err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
  return kExitBadInput;
}

struct SynthFlags {
  DomainFlags domain;
  std::string map_path;
  std::string world_path;
  std::vector<std::string> recording_paths;
  std::string bundle_path;
  std::string program_out = "-";
  std::string delta_out;
  std::string bundle_out;
};

int DoSynth(const SynthFlags& f, std::ostream& out, std::ostream& err) {
  Domain domain = f.domain.Load();
  SessionBundle bundle;
  if (!f.bundle_path.empty()) {
    bundle = DecodeBundle(ReadFile(f.bundle_path));
  } else {
    if (f.map_path.empty() || f.recording_paths.empty()) {
      throw Error(ErrorCode::kInvalidDocument,
                  "synth needs --bundle, or --map with at least one --recording");
    }
    bundle.map = DecodeMap(ReadFile(f.map_path));
    bundle.world = f.world_path.empty() ? WorldFromMap(bundle.map)
                                        : DecodeWorld(ReadFile(f.world_path));
    for (const auto& p : f.recording_paths) {
      bundle.recordings.push_back(DecodeRecording(ReadFile(p)));
    }
  }
  ValidateWorld(domain, bundle.world);
  SessionBundle result = Synthesize(domain, bundle);
  for (const auto& d : result.diagnostics) err << "diagnostic: " << d << "\n";
  Emit(out, f.program_out, EncodeProgram(*result.program));
  if (!f.delta_out.empty()) Emit(out, f.delta_out, EncodeDelta(result.delta));
  if (!f.bundle_out.empty()) Emit(out, f.bundle_out, EncodeBundle(result));
  return kExitOk;
}

struct SimulateFlags {
  DomainFlags domain;
  std::string program_path;
  std::string script_path;
  std::string world_path;
  std::string bundle_path;
  std::string log_out = "-";
};

int DoSimulate(const SimulateFlags& f, std::ostream& out) {
  Domain domain = f.domain.Load();
  Program program;
  World world;
  if (!f.bundle_path.empty()) {
    SessionBundle b = DecodeBundle(ReadFile(f.bundle_path));
    if (!b.program) throw Error(ErrorCode::kInvalidDocument, "bundle has no program");
    program = *b.program;
    world = b.synthesized_world ? *b.synthesized_world : b.world;
  }
  if (!f.program_path.empty()) program = DecodeProgram(ReadFile(f.program_path));
  if (!f.world_path.empty()) world = DecodeWorld(ReadFile(f.world_path));
  if (program.states.empty()) {
    throw Error(ErrorCode::kInvalidDocument, "simulate needs --program or --bundle");
  }
  Script script = DecodeScript(ReadFile(f.script_path));
  ExecState state = Run(domain, program, world, script);
  Emit(out, f.log_out, EncodeLog(state));
  return kExitOk;
}

struct ServeFlags {
  DomainFlags domain;
  std::string host = EnvOr("SKETCHSYNTH_HOST", "127.0.0.1");
  int port = std::atoi(EnvOr("SKETCHSYNTH_PORT", "8080").c_str());
  std::string map_path;
  std::string session_path = EnvOr("SKETCHSYNTH_SESSION", "");
};

int DoServe(const ServeFlags& f, std::ostream& out) {
  static Domain domain;
  domain = f.domain.Load();
  SessionBundle initial;
  if (!f.session_path.empty() && std::filesystem::exists(f.session_path)) {
    initial = DecodeBundle(ReadFile(f.session_path));
  } else if (!f.map_path.empty()) {
    initial.map = DecodeMap(ReadFile(f.map_path));
    initial.world = WorldFromMap(initial.map);
  }
  std::optional<std::string> persist;
  if (!f.session_path.empty()) persist = f.session_path;
  SessionStore store(domain, std::move(initial), persist);
  httplib::Server server;
  InstallRoutes(server, store);
  out << "listening on http://" << f.host << ":" << f.port << "\n" << std::flush;
  if (!server.listen(f.host, f.port)) {
    throw Error(ErrorCode::kInvalidDocument,
                "cannot listen on " + f.host + ":" + std::to_string(f.port));
  }
  return kExitOk;
}

struct CorpusFlags {
  DomainFlags domain;
  std::string data_dir = EnvOr("SKETCHSYNTH_DATA_DIR", SKETCHSYNTH_DEFAULT_DATA_DIR);
  std::string filter;
  bool update_golden = false;
};

int DoCorpus(const CorpusFlags& f, std::ostream& out, std::ostream& err) {
  Domain domain = f.domain.Load();
  std::vector<LoadedCase> cases = LoadCorpus(f.data_dir);
  size_t run = 0;
  size_t passed = 0;
  double total = 0;
  double worst = 0;
  out << std::left << std::setw(34) << "case" << std::setw(12) << "scenario"
      << std::setw(8) << "result" << "seconds\n";
  for (auto& c : cases) {
    if (!f.filter.empty() && c.spec.id.find(f.filter) == std::string::npos) continue;
    CaseOutcome r = RunCase(domain, c);
    if (f.update_golden && !r.program_document.empty() &&
        c.golden != r.program_document) {
      WriteFile(c.golden_path, r.program_document);
      c.golden = r.program_document;
      r = RunCase(domain, c);
      err << "updated " << c.golden_path << "\n";
    }
    ++run;
    passed += r.passed;
    total += r.synth_seconds;
    worst = std::max(worst, r.synth_seconds);
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(4) << r.synth_seconds;
    out << std::setw(34) << r.id << std::setw(12) << c.spec.scenario << std::setw(8)
        << (r.passed ? "PASS" : "FAIL") << secs.str() << "\n";
    for (const auto& why : r.failures) out << "    " << why << "\n";
  }
  out << std::fixed << std::setprecision(4) << passed << "/" << run
      << " cases passed; mean " << (run ? total / run : 0.0) << " s, max " << worst
      << " s\n";
  return passed == run ? kExitOk : kExitSynthesis;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Synthesize robot programs from sketches and speech"};
  app.require_subcommand(1);

  SynthFlags synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Synthesize a program");
  synth.domain.Add(synth_cmd);
  synth_cmd->add_option("--map", synth.map_path, "Map document");
  synth_cmd->add_option("--world", synth.world_path, "World document");
  synth_cmd->add_option("--recording", synth.recording_paths,
                        "Recording document, in order (repeatable)");
  synth_cmd->add_option("--bundle", synth.bundle_path,
                        "Session bundle to synthesize instead of --map/--recording");
  synth_cmd->add_option("-o,--program-out", synth.program_out, "Program output ('-' = stdout)");
  synth_cmd->add_option("--delta-out", synth.delta_out, "World delta output");
  synth_cmd->add_option("--bundle-out", synth.bundle_out, "Synthesized bundle output");

  SimulateFlags sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run a program against a script");
  sim.domain.Add(sim_cmd);
  sim_cmd->add_option("--program", sim.program_path, "Program document");
  sim_cmd->add_option("--world", sim.world_path, "Initial world document");
  sim_cmd->add_option("--bundle", sim.bundle_path, "Synthesized bundle (program + world)");
  sim_cmd->add_option("--script", sim.script_path, "Script document")->required();
  sim_cmd->add_option("-o,--log-out", sim.log_out, "Log output ('-' = stdout)");

  std::string dot_program;
  std::string dot_out = "-";
  CLI::App* dot_cmd = app.add_subcommand("export-dot", "Render a program as DOT");
  dot_cmd->add_option("--program", dot_program, "Program document")->required();
  dot_cmd->add_option("-o,--out", dot_out, "DOT output ('-' = stdout)");

  ServeFlags serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Run the HTTP authoring service");
  serve.domain.Add(serve_cmd);
  serve_cmd->add_option("--host", serve.host, "Bind address (env SKETCHSYNTH_HOST)");
  serve_cmd->add_option("--port", serve.port, "Port (env SKETCHSYNTH_PORT)");
  serve_cmd->add_option("--map", serve.map_path, "Initial map document");
  serve_cmd->add_option("--session", serve.session_path,
                        "Bundle file to load and persist (env SKETCHSYNTH_SESSION)");

  CorpusFlags corpus;
  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Run the scenario suite");
  corpus.domain.Add(corpus_cmd);
  corpus_cmd->add_option("--data-dir", corpus.data_dir,
                         "Directory with corpus/, maps/, golden/ (env SKETCHSYNTH_DATA_DIR)");
  corpus_cmd->add_option("--filter", corpus.filter, "Only cases whose id contains this");
  corpus_cmd->add_flag("--update-golden", corpus.update_golden,
                       "Rewrite golden programs from the current output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    if (*synth_cmd) return DoSynth(synth, out, err);
    if (*sim_cmd) return DoSimulate(sim, out);
    if (*dot_cmd) {
      Emit(out, dot_out, ExportDot(DecodeProgram(ReadFile(dot_program))));
      return kExitOk;
    }
    if (*serve_cmd) return DoServe(serve, out);
    if (*corpus_cmd) return DoCorpus(corpus, out, err);
  } catch (const Error& e) {
    return Report(err, e);
  }
  return kExitBadInput;
}

}  // namespace sketchsynth::tools
