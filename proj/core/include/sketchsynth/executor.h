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

#ifndef SKETCHSYNTH_EXECUTOR_H_
#define SKETCHSYNTH_EXECUTOR_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sketchsynth/assembler.h"
#include "sketchsynth/command.h"
#include "sketchsynth/error.h"
#include "sketchsynth/knowledge.h"
#include "sketchsynth/planner.h"

namespace sketchsynth {

// An external event, or a tick that lets epsilon and exit transitions fire.
struct Stimulus {
  std::optional<Command> event;

  static Stimulus Tick() { return {}; }
  static Stimulus Event(Command c) { return {std::move(c)}; }
  bool is_tick() const { return !event.has_value(); }
  bool operator==(const Stimulus&) const = default;
};

struct Script {
  std::vector<Stimulus> stimuli;

  bool operator==(const Script&) const = default;
};

struct LogEntry {
  size_t state = 0;
  Command action;
  // The event that triggered the transition, if any.
  std::optional<Command> trigger;

  bool operator==(const LogEntry&) const = default;
};

struct ExecState {
  size_t current = 0;
  World world;
  std::vector<LogEntry> log;
  bool halted = false;
};

// A precondition failed when entering a state.
class RuntimeFault : public Error {
 public:
  RuntimeFault(size_t state, const std::string& message)
      : Error(ErrorCode::kRuntimeFault, message), state_(state) {}
  size_t state() const { return state_; }

 private:
  size_t state_;
};

// Case-insensitive on text arguments, exact otherwise.
bool EventMatches(const Command& label, const Command& event);

ExecState Start(const Program& program, const World& world);

// Advances by one stimulus. Unmatched stimuli leave the state unchanged; a
// state with no outgoing transitions halts. Throws RuntimeFault.
ExecState Step(const Domain& domain, const Program& program, ExecState state,
               const Stimulus& stimulus);

ExecState Run(const Domain& domain, const Program& program, const World& world,
              const Script& script);

// Automaton acceptance, ignoring guards: feeding the trace's events
// reproduces its actions.
bool ValidateTrace(const Program& program, const Trace& trace);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_EXECUTOR_H_
