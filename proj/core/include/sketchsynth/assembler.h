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

#ifndef SKETCHSYNTH_ASSEMBLER_H_
#define SKETCHSYNTH_ASSEMBLER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sketchsynth/command.h"
#include "sketchsynth/geomap.h"
#include "sketchsynth/knowledge.h"
#include "sketchsynth/planner.h"

namespace sketchsynth {

struct LoopDescriptor {
  std::vector<std::string> body;
  size_t start_index = 0;

  bool operator==(const LoopDescriptor&) const = default;
};

struct LoopExtension {
  RegionSequence extended;
  std::optional<LoopDescriptor> loop;
  std::vector<std::string> diagnostics;
};

// Finds the first repeated region and extends the sequence so the body
// occurs exactly twice. Throws kAmbiguousLoop when the entries after the
// repeat do not follow the body.
LoopExtension DetectAndExtend(const RegionSequence& seq);

struct PreparedSequence {
  LoopExtension extension;
  PlanSequence plan;
};

// Loop detection plus the visit list handed to the planner. For attached
// sequences the attachment entry is a stay and is excluded from loop
// detection unless it starts a self-loop.
PreparedSequence PrepareSequence(const RegionSequence& seq);

struct ProgramState {
  size_t id = 0;
  Command action;
  // Robot location after the action and its region.
  std::string location;
  std::string region;
  // Terminal state entered when a loop exits.
  bool halt = false;

  bool operator==(const ProgramState&) const = default;
};

enum class LabelKind { kEvent, kEpsilon, kExit };

std::string_view LabelKindName(LabelKind kind);
LabelKind ParseLabelKind(std::string_view name);

// Event and epsilon transitions fire when `guard` holds; exit transitions
// fire on a tick when it does not. Later transitions take priority.
struct Transition {
  size_t src = 0;
  size_t dst = 0;
  LabelKind kind = LabelKind::kEpsilon;
  std::optional<Command> event;
  std::vector<Predicate> guard;

  bool operator==(const Transition&) const = default;
};

struct Program {
  std::vector<ProgramState> states;
  std::vector<Transition> transitions;
  size_t initial = 0;
  std::vector<std::string> diagnostics;

  std::vector<const Transition*> Outgoing(size_t state) const;
  bool operator==(const Program&) const = default;
};

// Folds a planned trace into a state chain; looping traces get a back-edge
// and, when the body's first non-move action has preconditions, an exit
// into a halt state. Throws kFoldInvariant when the iterations differ.
Program Fold(const Domain& domain, const Trace& trace);

// Adds `branch` (a folded program whose initial state is idle) to `host` at
// every host state in `region`. The branch's first transition label becomes
// the gate. Throws kAttachmentMissing when no host state is in `region`.
Program Attach(const Domain& domain, const Program& host, const Program& branch,
               const std::string& region);

// One diagnostic per state with two epsilon successors or two successors
// with identical event labels.
std::vector<std::string> CheckDeterminism(const Program& program);

// Guard entering a run of steps: preconditions of its first non-move action,
// without robot_at, grounded where that action runs.
std::vector<Predicate> EntryGuard(const Domain& domain,
                                  const std::vector<TraceStep>& steps,
                                  size_t begin, size_t end,
                                  const std::string& start_location);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_ASSEMBLER_H_
