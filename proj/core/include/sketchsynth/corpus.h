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

#ifndef SKETCHSYNTH_CORPUS_H_
#define SKETCHSYNTH_CORPUS_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sketchsynth/executor.h"
#include "sketchsynth/geomap.h"
#include "sketchsynth/knowledge.h"
#include "sketchsynth/pipeline.h"

// Scenario cases: a map name, the entities the developer placed, and one or
// more recordings whose strokes are given as region waypoints. Each case is
// synthesized and compared against its expectations and golden program.

namespace sketchsynth {

struct CorpusEntity {
  std::string id;
  std::string type;
  std::string location;
  int units = 1;

  bool operator==(const CorpusEntity&) const = default;
};

struct CorpusRecording {
  std::string id;
  std::string utterance;
  // Region ids visited in order; the stroke runs centroid to centroid.
  std::vector<std::string> waypoints;
  // Waypoint indices after which the stroke circles once in place.
  std::set<size_t> self_loops;
  std::optional<AttachmentPoint> attachment;

  bool operator==(const CorpusRecording&) const = default;
};

struct CorpusExpectation {
  // Canonical trace per recording; empty strings are not checked.
  std::vector<std::string> traces;
  // Stimuli as command literals or "tick", and the action log they produce.
  std::vector<std::string> script;
  std::vector<std::string> log;
  std::optional<bool> halted;
  // Whether check_determinism reports nothing.
  std::optional<bool> deterministic;
  // Entity types the planner must insert, in order.
  std::optional<std::vector<std::string>> inserted_types;

  bool operator==(const CorpusExpectation&) const = default;
};

struct CorpusCase {
  std::string id;
  std::string scenario;
  std::string description;
  std::string map;
  std::vector<CorpusEntity> entities;
  std::optional<std::string> robot_at;
  std::vector<CorpusRecording> recordings;
  CorpusExpectation expect;

  bool operator==(const CorpusCase&) const = default;
};

std::string EncodeCorpusCase(const CorpusCase& c);
CorpusCase DecodeCorpusCase(std::string_view text);

// Polyline through region centroids sampled every 5 cm, 10 ms apart, with a
// 0.6 m circle at each self-loop waypoint. Throws kUnknownLocation.
Sketch SketchFromWaypoints(const MapModel& map,
                           const std::vector<std::string>& waypoints,
                           const std::set<size_t>& self_loops = {});

SessionBundle BuildBundle(const Domain& domain, const CorpusCase& c,
                          const MapModel& map);

struct LoadedCase {
  CorpusCase spec;
  MapModel map;
  std::string golden_path;
  std::optional<std::string> golden;
};

// Reads <dir>/corpus/*.json in name order, with maps from <dir>/maps and
// goldens from <dir>/golden/<id>.program.json.
std::vector<LoadedCase> LoadCorpus(const std::string& data_dir);

struct CaseOutcome {
  std::string id;
  bool passed = false;
  std::vector<std::string> failures;
  double synth_seconds = 0;
  std::optional<SessionBundle> bundle;
  std::string program_document;
};

CaseOutcome RunCase(const Domain& domain, const LoadedCase& loaded,
                    const SynthesisOptions& options = {});

// Whole-file helpers. ReadFile throws kInvalidDocument when unreadable.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

// Stimulus from "tick" or a command literal.
Stimulus ParseStimulus(const Domain& domain, std::string_view text);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_CORPUS_H_
