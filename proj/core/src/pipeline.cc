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

#include "sketchsynth/pipeline.h"

#include <map>

#include "sketchsynth/error.h"

namespace sketchsynth {

namespace {

template <typename F>
auto AtStage(const std::string& recording, const char* stage, F&& f) {
  try {
    return f();
  } catch (const SynthesisError&) {
    throw;
  } catch (const Error& e) {
    throw SynthesisError(e, recording, stage);
  }
}

// Region under the first sample that lies inside one.
std::optional<std::string> StartRegion(const MapModel& map, const Sketch& sketch) {
  for (const auto& p : sketch.points) {
    if (auto r = RegionAt(map, {p.x, p.y})) return r;
  }
  return std::nullopt;
}

}  // namespace

SessionBundle Synthesize(const Domain& domain, const SessionBundle& bundle,
                         const SynthesisOptions& options) {
  if (bundle.recordings.empty()) {
    throw Error(ErrorCode::kEmptySketch, "no recordings to synthesize");
  }
  SessionBundle out = bundle;
  out.results.clear();
  out.delta = {};
  out.diagnostics.clear();
  out.program.reset();

  World session = bundle.world;
  std::optional<Program> program;
  std::map<std::string, size_t> seen;

  for (size_t index = 0; index < bundle.recordings.size(); ++index) {
    const Recording& rec = bundle.recordings[index];
    const std::string& id = rec.id;
    if (seen.count(id)) {
      throw SynthesisError(Error(ErrorCode::kDuplicateName,
                                 "duplicate recording id '" + id + "'"),
                           id, kStageUtterance);
    }
    const bool attached = rec.attachment.has_value() && program.has_value();
    if (rec.attachment && !program) {
      throw SynthesisError(
          Error(ErrorCode::kAttachmentMissing,
                "the first recording cannot be attached"),
          id, kStageAttach);
    }
    if (attached && !seen.count(rec.attachment->host)) {
      throw SynthesisError(
          Error(ErrorCode::kAttachmentMissing,
                "unknown host recording '" + rec.attachment->host + "'"),
          id, kStageAttach);
    }
    seen[id] = index;

    RecordingResult result;
    result.recording = id;

    ParsedUtterance parsed = AtStage(id, kStageUtterance, [&] {
      return ParseUtterance(domain, session, MakeUtterance(rec.utterance));
    });
    result.cores = parsed.cores;
    for (const auto& d : parsed.diagnostics) out.diagnostics.push_back(id + ": " + d);

    result.sequence = AtStage(id, kStageSketch, [&] {
      return ParseSketch(bundle.map, rec.sketch, attached, options.sketch);
    });
    std::string attach_region;
    if (attached) {
      attach_region = rec.attachment->region.empty()
                          ? result.sequence.attachment.value_or("")
                          : rec.attachment->region;
      if (!result.sequence.regions.empty()) {
        result.sequence.regions.front() = attach_region;
      }
      result.sequence.attachment = attach_region;
    }

    PreparedSequence prepared =
        AtStage(id, kStageLoop, [&] { return PrepareSequence(result.sequence); });
    result.extended = prepared.extension.extended;
    for (const auto& d : prepared.extension.diagnostics) {
      out.diagnostics.push_back(id + ": " + d);
    }

    World start = session;
    if (attached) {
      start.robot_at = attach_region;
      start.holding.reset();
    } else if (!start.robot_at) {
      start.robot_at = StartRegion(bundle.map, rec.sketch);
    }
    PlanResult plan = AtStage(id, kStagePlan, [&] {
      return PlanTrace(domain, start, parsed.cores, prepared.plan,
                       options.planner);
    });
    result.trace = plan.trace;
    result.delta = plan.delta;
    result.cost = plan.cost;

    // Keep the session's own robot state; adopt only the inserted entities.
    std::optional<std::string> robot_at = session.robot_at;
    if (!attached && !robot_at) robot_at = start.robot_at;
    std::optional<std::string> holding = session.holding;
    session = plan.augmented;
    session.robot_at = robot_at;
    session.holding = holding;
    out.delta.insertions.insert(out.delta.insertions.end(),
                                plan.delta.insertions.begin(),
                                plan.delta.insertions.end());
    out.delta.entity_ids.insert(out.delta.entity_ids.end(),
                                plan.delta.entity_ids.begin(),
                                plan.delta.entity_ids.end());

    Program folded =
        AtStage(id, kStageFold, [&] { return Fold(domain, plan.trace); });
    if (!program) {
      program = std::move(folded);
    } else {
      program = AtStage(id, kStageAttach, [&] {
        return Attach(domain, *program, folded, attach_region);
      });
    }
    out.results.push_back(std::move(result));
  }

  for (const auto& d : program->diagnostics) out.diagnostics.push_back(d);
  out.program = std::move(program);
  out.synthesized_world = std::move(session);
  return out;
}

}  // namespace sketchsynth
