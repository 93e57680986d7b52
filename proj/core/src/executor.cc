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

#include "sketchsynth/executor.h"

#include <set>

namespace sketchsynth {

namespace {

bool GuardHolds(const World& world, const std::vector<Predicate>& guard) {
  for (const auto& p : guard) {
    if (!EvalPredicate(world, p)) return false;
  }
  return true;
}

ExecState Enter(const Domain& domain, const Program& program, ExecState state,
                const Transition& t) {
  const ProgramState& target = program.states[t.dst];
  auto failed = FailedPreconditions(domain, state.world, target.action);
  if (!failed.empty()) {
    std::string why;
    for (const auto& p : failed) {
      if (!why.empty()) why += ", ";
      why += ToString(p);
    }
    throw RuntimeFault(t.dst, "runtime fault in state " +
                                  std::to_string(t.dst) + " (" +
                                  ToString(target.action) + "): " + why);
  }
  try {
    state.world = ApplyCommand(domain, state.world, target.action);
  } catch (const Error& e) {
    throw RuntimeFault(t.dst, "runtime fault in state " +
                                  std::to_string(t.dst) + ": " + e.what());
  }
  state.current = t.dst;
  state.log.push_back({t.dst, target.action, t.event});
  if (program.Outgoing(t.dst).empty()) state.halted = true;
  return state;
}

}  // namespace

bool EventMatches(const Command& label, const Command& event) {
  if (label.schema != event.schema || label.args.size() != event.args.size()) {
    return false;
  }
  for (size_t i = 0; i < label.args.size(); ++i) {
    const Arg& a = label.args[i];
    const Arg& b = event.args[i];
    if (a.kind != b.kind) return false;
    if (a.kind == Arg::Kind::kText ? ToLower(a.value) != ToLower(b.value)
                                   : a.value != b.value) {
      return false;
    }
  }
  return true;
}

ExecState Start(const Program& program, const World& world) {
  ExecState s;
  s.current = program.initial;
  s.world = world;
  if (!program.states.empty()) {
    s.log.push_back({program.initial, program.states[program.initial].action,
                     std::nullopt});
  }
  s.halted = program.states.empty() || program.Outgoing(program.initial).empty();
  return s;
}

ExecState Step(const Domain& domain, const Program& program, ExecState state,
               const Stimulus& stimulus) {
  if (state.halted) return state;
  auto out = program.Outgoing(state.current);
  if (out.empty()) {
    state.halted = true;
    return state;
  }
  // Most recent transition first.
  if (stimulus.event) {
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      const Transition& t = **it;
      if (t.kind == LabelKind::kEvent && t.event &&
          EventMatches(*t.event, *stimulus.event) &&
          GuardHolds(state.world, t.guard)) {
        return Enter(domain, program, std::move(state), t);
      }
    }
    return state;
  }
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    const Transition& t = **it;
    if (t.kind == LabelKind::kEpsilon && GuardHolds(state.world, t.guard)) {
      return Enter(domain, program, std::move(state), t);
    }
  }
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    const Transition& t = **it;
    if (t.kind == LabelKind::kExit && !GuardHolds(state.world, t.guard)) {
      return Enter(domain, program, std::move(state), t);
    }
  }
  return state;
}

ExecState Run(const Domain& domain, const Program& program, const World& world,
              const Script& script) {
  ExecState s = Start(program, world);
  for (const auto& stimulus : script.stimuli) {
    if (s.halted) break;
    s = Step(domain, program, std::move(s), stimulus);
  }
  return s;
}

bool ValidateTrace(const Program& program, const Trace& trace) {
  if (trace.steps.empty() || program.states.empty()) return false;
  if (program.states[program.initial].action != trace.steps[0].action) {
    return false;
  }
  std::set<size_t> current{program.initial};
  for (size_t i = 1; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    std::set<size_t> next;
    for (const auto& t : program.transitions) {
      if (!current.count(t.src)) continue;
      bool label_ok = step.event ? (t.kind == LabelKind::kEvent && t.event &&
                                    *t.event == *step.event)
                                 : t.kind != LabelKind::kEvent;
      if (label_ok && program.states[t.dst].action == step.action) {
        next.insert(t.dst);
      }
    }
    if (next.empty()) return false;
    current = std::move(next);
  }
  return true;
}

}  // namespace sketchsynth
