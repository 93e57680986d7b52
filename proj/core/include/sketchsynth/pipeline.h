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

#ifndef SKETCHSYNTH_PIPELINE_H_
#define SKETCHSYNTH_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "sketchsynth/assembler.h"
#include "sketchsynth/geomap.h"
#include "sketchsynth/knowledge.h"
#include "sketchsynth/language.h"
#include "sketchsynth/planner.h"

namespace sketchsynth {

struct AttachmentPoint {
  // Empty region: taken from where the sketch starts.
  std::string region;
  std::string host;

  bool operator==(const AttachmentPoint&) const = default;
};

struct Recording {
  std::string id;
  std::string utterance;
  Sketch sketch;
  std::optional<AttachmentPoint> attachment;

  bool operator==(const Recording&) const = default;
};

// What synthesis produced for one recording.
struct RecordingResult {
  std::string recording;
  std::vector<CoreCommand> cores;
  RegionSequence sequence;
  RegionSequence extended;
  Trace trace;
  WorldDelta delta;
  double cost = 0;

  bool operator==(const RecordingResult&) const = default;
};

struct SessionBundle {
  std::string domain = "default";
  MapModel map;
  // The world as authored; synthesis never modifies it.
  World world;
  std::vector<Recording> recordings;
  // Outputs of the last successful synthesis.
  std::optional<Program> program;
  std::vector<RecordingResult> results;
  WorldDelta delta;
  // `world` plus every planner insertion.
  std::optional<World> synthesized_world;
  std::vector<std::string> diagnostics;

  bool operator==(const SessionBundle&) const = default;
};

struct SynthesisOptions {
  PlannerOptions planner;
  SketchOptions sketch;
};

// Runs every recording through parsing, planning and folding, then attaches
// later recordings as branches. Throws SynthesisError naming the recording
// and stage; the input bundle is never modified.
SessionBundle Synthesize(const Domain& domain, const SessionBundle& bundle,
                         const SynthesisOptions& options = {});

// Stage names reported in SynthesisError.
inline constexpr const char* kStageUtterance = "utterance";
inline constexpr const char* kStageSketch = "sketch";
inline constexpr const char* kStageLoop = "loop";
inline constexpr const char* kStagePlan = "plan";
inline constexpr const char* kStageFold = "fold";
inline constexpr const char* kStageAttach = "attach";

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_PIPELINE_H_
