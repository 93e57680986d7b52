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

#include "sketchsynth/corpus.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "sketchsynth/documents.h"
#include "sketchsynth/error.h"

namespace sketchsynth {

namespace {

constexpr double kSpacing = 0.05;
constexpr double kStepMs = 10;
constexpr double kCircleRadius = 0.6;

void AppendSegment(std::vector<SketchPoint>& pts, Point to) {
  Point from{pts.back().x, pts.back().y};
  double len = std::hypot(to.x - from.x, to.y - from.y);
  int n = std::max(1, static_cast<int>(std::ceil(len / kSpacing)));
  for (int i = 1; i <= n; ++i) {
    double f = static_cast<double>(i) / n;
    pts.push_back({from.x + f * (to.x - from.x), from.y + f * (to.y - from.y),
                   pts.back().t_ms + kStepMs});
  }
}

void AppendCircle(std::vector<SketchPoint>& pts, Point c) {
  AppendSegment(pts, {c.x + kCircleRadius, c.y});
  const int n = 96;
  for (int i = 1; i <= n; ++i) {
    double a = 2 * std::numbers::pi * i / n;
    pts.push_back({c.x + kCircleRadius * std::cos(a),
                   c.y + kCircleRadius * std::sin(a), pts.back().t_ms + kStepMs});
  }
  AppendSegment(pts, c);
}

std::string Join(const std::vector<std::string>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out + "]";
}

int TotalUnits(const World& w, const std::string& id) {
  auto it = w.entities.find(id);
  int n = it == w.entities.end() ? 0 : it->second.Units();
  return n + (w.holding == id ? 1 : 0);
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidDocument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidDocument, "cannot write " + path);
  out << contents;
}

Stimulus ParseStimulus(const Domain& domain, std::string_view text) {
  if (text == "tick") return Stimulus::Tick();
  return Stimulus::Event(ParseCommandLiteral(domain, text));
}

Sketch SketchFromWaypoints(const MapModel& map,
                           const std::vector<std::string>& waypoints,
                           const std::set<size_t>& self_loops) {
  Sketch sketch;
  for (size_t i = 0; i < waypoints.size(); ++i) {
    const MapRegion* region = map.FindRegion(waypoints[i]);
    if (!region) {
      throw Error(ErrorCode::kUnknownLocation,
                  "waypoint '" + waypoints[i] + "' is not a map region");
    }
    Point c = Centroid(region->polygon);
    if (sketch.points.empty()) {
      sketch.points.push_back({c.x, c.y, 0});
    } else {
      AppendSegment(sketch.points, c);
    }
    if (self_loops.count(i)) AppendCircle(sketch.points, c);
  }
  return sketch;
}

SessionBundle BuildBundle(const Domain& domain, const CorpusCase& c,
                          const MapModel& map) {
  SessionBundle bundle;
  bundle.map = map;
  bundle.world = WorldFromMap(map);
  for (const auto& e : c.entities) {
    if (bundle.world.entities.count(e.id)) {
      throw Error(ErrorCode::kDuplicateName, "duplicate entity '" + e.id + "'");
    }
    bundle.world.entities[e.id] =
        Entity{e.id, e.type, {{e.location, e.units}}, Provenance::kUser};
  }
  bundle.world.robot_at = c.robot_at;
  ValidateWorld(domain, bundle.world);
  for (const auto& r : c.recordings) {
    bundle.recordings.push_back(
        {r.id, r.utterance, SketchFromWaypoints(map, r.waypoints, r.self_loops),
         r.attachment});
  }
  return bundle;
}

std::vector<LoadedCase> LoadCorpus(const std::string& data_dir) {
  namespace fs = std::filesystem;
  fs::path root(data_dir);
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root / "corpus", ec)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (ec) {
    throw Error(ErrorCode::kInvalidDocument,
                "cannot list " + (root / "corpus").string());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, MapModel> maps;
  std::vector<LoadedCase> out;
  for (const auto& file : files) {
    LoadedCase loaded;
    try {
      loaded.spec = DecodeCorpusCase(ReadFile(file.string()));
    } catch (const Error& e) {
      throw Error(e.code(), file.filename().string() + ": " + e.what());
    }
    auto it = maps.find(loaded.spec.map);
    if (it == maps.end()) {
      std::string path = (root / "maps" / (loaded.spec.map + ".json")).string();
      it = maps.emplace(loaded.spec.map, DecodeMap(ReadFile(path))).first;
    }
    loaded.map = it->second;
    loaded.golden_path =
        (root / "golden" / (loaded.spec.id + ".program.json")).string();
    if (fs::exists(loaded.golden_path)) loaded.golden = ReadFile(loaded.golden_path);
    out.push_back(std::move(loaded));
  }
  return out;
}

CaseOutcome RunCase(const Domain& domain, const LoadedCase& loaded,
                    const SynthesisOptions& options) {
  const CorpusCase& c = loaded.spec;
  CaseOutcome out;
  out.id = c.id;
  auto fail = [&](std::string msg) { out.failures.push_back(std::move(msg)); };

  SessionBundle input;
  try {
    input = BuildBundle(domain, c, loaded.map);
  } catch (const Error& e) {
    fail(std::string("bad case: ") + e.what());
    return out;
  }
  auto t0 = std::chrono::steady_clock::now();
  try {
    out.bundle = Synthesize(domain, input, options);
  } catch (const Error& e) {
    out.synth_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fail(std::string("synthesis failed: ") + e.what());
    return out;
  }
  out.synth_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const SessionBundle& b = *out.bundle;
  out.program_document = EncodeProgram(*b.program);

  for (size_t i = 0; i < c.expect.traces.size() && i < b.results.size(); ++i) {
    if (c.expect.traces[i].empty()) continue;
    std::string got = ToString(b.results[i].trace);
    if (got != c.expect.traces[i]) {
      fail("trace " + b.results[i].recording + ": got '" + got + "'");
    }
  }
  if (c.expect.traces.size() > b.results.size()) fail("more traces expected than recordings");

  if (!loaded.golden) {
    fail("missing golden program " + loaded.golden_path);
  } else if (*loaded.golden != out.program_document) {
    fail("program differs from golden " + loaded.golden_path);
  }

  if (c.expect.deterministic) {
    bool det = CheckDeterminism(*b.program).empty();
    if (det != *c.expect.deterministic) {
      fail(det ? "expected a nondeterminism diagnostic" : "unexpected nondeterminism");
    }
  }
  if (c.expect.inserted_types) {
    std::vector<std::string> types;
    for (const auto& ins : b.delta.insertions) types.push_back(ins.entity_type);
    if (types != *c.expect.inserted_types) fail("inserted types " + Join(types));
  }

  if (!c.expect.script.empty()) {
    Script script;
    try {
      for (const auto& s : c.expect.script) {
        script.stimuli.push_back(ParseStimulus(domain, s));
      }
    } catch (const Error& e) {
      fail(std::string("bad script: ") + e.what());
      return out;
    }
    const World& world = *b.synthesized_world;
    try {
      ExecState st = Run(domain, *b.program, world, script);
      std::vector<std::string> log;
      for (const auto& e : st.log) log.push_back(ToString(e.action));
      if (log != c.expect.log) fail("log " + Join(log));
      if (c.expect.halted && st.halted != *c.expect.halted) {
        fail(st.halted ? "run halted" : "run did not halt");
      }
      for (const auto& [id, e] : world.entities) {
        if (TotalUnits(st.world, id) != TotalUnits(world, id)) {
          fail("entity '" + id + "' not conserved");
        }
      }
    } catch (const RuntimeFault& f) {
      fail("runtime fault in state " + std::to_string(f.state()) + ": " + f.what());
    }
  }
  out.passed = out.failures.empty();
  return out;
}

}  // namespace sketchsynth
