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

#ifndef SKETCHSYNTH_PLANNER_H_
#define SKETCHSYNTH_PLANNER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sketchsynth/command.h"
#include "sketchsynth/knowledge.h"
#include "sketchsynth/language.h"

namespace sketchsynth {

// One entry of the sequence the planner must visit. Stay entries are already
// satisfied by the robot's position (an attachment point, or the repeat of a
// self-loop) and need no moveTo.
struct PlanVisit {
  std::string region;
  bool stay = false;

  bool operator==(const PlanVisit&) const = default;
};

// Visits to plan. When `loop_start` is set, visits[loop_start..] form one loop
// iteration; the planner plans it once and replays it as the second iteration.
struct PlanSequence {
  std::vector<PlanVisit> visits;
  std::optional<size_t> loop_start;

  bool operator==(const PlanSequence&) const = default;
};

struct TraceStep {
  std::optional<Command> event;
  Command action;
  // Robot location after the action and the region enclosing it.
  std::string location;
  std::string region;

  bool operator==(const TraceStep&) const = default;
};

// steps[0] is always idle with no event. For looping traces the last
// 2 * loop_length steps are two identical iterations.
struct Trace {
  std::vector<TraceStep> steps;
  std::optional<size_t> loop_begin;

  size_t loop_length() const;
  bool operator==(const Trace&) const = default;
};

// Canonical form: `idle --eventApproach--> moveTo: garage --> grab: groceries`.
std::string ToString(const Trace& trace);

struct WorldDelta {
  std::vector<Insertion> insertions;
  // Ids given to the inserted entities, parallel to `insertions`.
  std::vector<std::string> entity_ids;

  bool operator==(const WorldDelta&) const = default;
};

struct PenaltyWeights {
  double length = 1;
  double visit = 2;
  double insert = 5;
};

// Length (non-idle commands, events included) plus visits with no action
// before the next move plus insertions, each weighted.
double CostOf(const Trace& trace, const WorldDelta& delta,
              const PenaltyWeights& weights = {});

// Fills holes in `partial` for execution at `here`: the held entity, then the
// entity the robot stands at, then the least entity in the enclosing region.
// Returns nullopt when a hole has no candidate there (the planner then
// considers inserting one). Throws kUnresolvableHole when no domain type can
// ever fill a hole.
std::optional<Command> ResolveHole(const Domain& domain, const World& world,
                                   const Command& partial,
                                   const std::string& here);

struct PlannerOptions {
  size_t max_expansions = 200000;
  PenaltyWeights weights;
  // When set, the explored search graph is written here as DOT.
  std::string* search_graph_dot = nullptr;
};

struct PlanResult {
  Trace trace;
  WorldDelta delta;
  // The input world plus the inserted entities (before any action runs).
  World augmented;
  double cost = 0;
  size_t expansions = 0;
};

// A* over command placement, hole resolution, repair actions and world
// insertion. Throws kUnresolvableHole or kNoPlan.
PlanResult PlanTrace(const Domain& domain, const World& world,
                     const std::vector<CoreCommand>& cores,
                     const PlanSequence& sequence,
                     const PlannerOptions& options = {});

// Lower bound on the remaining cost: unvisited non-stay entries plus cores
// that are not moveTo commands.
double Heuristic(const Domain& domain, const PlanSequence& sequence,
                 size_t next_visit, const std::vector<CoreCommand>& cores,
                 size_t cores_done);

// True when the ground `step` realises `core` (type references and holes
// accept any entity of the required type or category).
bool MatchesCore(const Domain& domain, const World& world, const Command& core,
                 const Command& step);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_PLANNER_H_
