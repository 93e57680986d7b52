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

#include "sketchsynth/assembler.h"

#include <algorithm>
#include <map>

#include "sketchsynth/error.h"

namespace sketchsynth {

namespace {

std::string Join(const std::vector<std::string>& v, size_t begin, size_t end) {
  std::string out;
  for (size_t i = begin; i < end && i < v.size(); ++i) {
    if (!out.empty()) out += " -> ";
    out += v[i];
  }
  return out;
}

}  // namespace

LoopExtension DetectAndExtend(const RegionSequence& seq) {
  LoopExtension out;
  out.extended = seq;
  const auto& r = seq.regions;
  // First index whose region occurred earlier.
  size_t head = 0, repeat = 0;
  bool found = false;
  for (size_t j = 1; j < r.size() && !found; ++j) {
    for (size_t i = 0; i < j; ++i) {
      if (r[i] == r[j]) {
        head = i;
        repeat = j;
        found = true;
        break;
      }
    }
  }
  if (!found) return out;

  std::vector<std::string> body(r.begin() + head, r.begin() + repeat);
  const size_t len = body.size();
  for (size_t k = repeat; k < r.size(); ++k) {
    if (r[k] != body[(k - repeat) % len]) {
      throw Error(ErrorCode::kAmbiguousLoop,
                  "ambiguous loop: " + Join(r, 0, r.size()) +
                      " repeats more than one loop head");
    }
  }
  if (r.size() - repeat > len) {
    out.diagnostics.push_back("sketch repeats the loop " + Join(body, 0, len) +
                              " more than twice; extra laps are folded");
  }

  RegionSequence ext;
  ext.attachment = seq.attachment;
  ext.regions.assign(r.begin(), r.begin() + repeat);
  ext.regions.insert(ext.regions.end(), body.begin(), body.end());
  for (size_t i : seq.self_loops) {
    if (i < head + 2 * len - 1) ext.self_loops.insert(i);
  }
  // Self-loop flags inside the body hold in both iterations.
  for (size_t i : seq.self_loops) {
    if (i >= head && i < repeat) ext.self_loops.insert(i + len);
  }
  if (len == 1) ext.self_loops.insert(head);
  std::erase_if(ext.self_loops,
                [&](size_t i) { return i + 1 >= ext.regions.size(); });
  out.extended = std::move(ext);
  out.loop = LoopDescriptor{std::move(body), head};
  return out;
}

PreparedSequence PrepareSequence(const RegionSequence& seq) {
  PreparedSequence out;
  const bool attached = seq.attachment.has_value();
  const bool skip_head = attached && !seq.self_loops.count(0) && !seq.regions.empty();

  RegionSequence tail = seq;
  if (skip_head) {
    tail.regions.erase(tail.regions.begin());
    tail.self_loops.clear();
    for (size_t i : seq.self_loops) {
      if (i > 0) tail.self_loops.insert(i - 1);
    }
  }
  LoopExtension ext = DetectAndExtend(tail);

  PlanSequence plan;
  const size_t offset = skip_head ? 1 : 0;
  if (skip_head) plan.visits.push_back({seq.regions.front(), true});
  const auto& regions = ext.extended.regions;
  size_t count = regions.size();
  if (ext.loop) count = ext.loop->start_index + ext.loop->body.size();
  for (size_t i = 0; i < count; ++i) {
    bool stay = (i > 0 && ext.extended.self_loops.count(i - 1)) ||
                (attached && !skip_head && i == 0);
    plan.visits.push_back({regions[i], stay});
  }
  if (ext.loop) {
    plan.loop_start = offset + ext.loop->start_index;
    // A one-region body repeats in place: the laps after reaching it are
    // stays.
    if (ext.loop->body.size() == 1 && !plan.visits[*plan.loop_start].stay) {
      plan.visits.push_back({ext.loop->body.front(), true});
      plan.loop_start = *plan.loop_start + 1;
    }
  }

  if (skip_head) {
    ext.extended.regions.insert(ext.extended.regions.begin(), seq.regions.front());
    std::set<size_t> shifted;
    for (size_t i : ext.extended.self_loops) shifted.insert(i + 1);
    ext.extended.self_loops = std::move(shifted);
    if (ext.loop) ext.loop->start_index += 1;
  }
  out.extension = std::move(ext);
  out.plan = std::move(plan);
  return out;
}

std::string_view LabelKindName(LabelKind kind) {
  switch (kind) {
    case LabelKind::kEvent:
      return "event";
    case LabelKind::kEpsilon:
      return "epsilon";
    case LabelKind::kExit:
      return "exit";
  }
  return "epsilon";
}

LabelKind ParseLabelKind(std::string_view name) {
  if (name == "event") return LabelKind::kEvent;
  if (name == "epsilon") return LabelKind::kEpsilon;
  if (name == "exit") return LabelKind::kExit;
  throw Error(ErrorCode::kInvalidDocument,
              "unknown transition kind '" + std::string(name) + "'");
}

std::vector<const Transition*> Program::Outgoing(size_t state) const {
  std::vector<const Transition*> out;
  for (const auto& t : transitions) {
    if (t.src == state) out.push_back(&t);
  }
  return out;
}

std::vector<Predicate> EntryGuard(const Domain& domain,
                                  const std::vector<TraceStep>& steps,
                                  size_t begin, size_t end,
                                  const std::string& start_location) {
  std::string location = start_location;
  for (size_t i = begin; i < end && i < steps.size(); ++i) {
    const Command& action = steps[i].action;
    if (action.schema != "moveTo" && action.schema != "idle") {
      const CommandSchema* schema = domain.FindSchema(action.schema);
      World where;
      where.robot_at = location;
      std::vector<Predicate> guard;
      for (const auto& pre : schema->preconditions) {
        if (pre.name == PredicateName::kRobotAt) continue;
        guard.push_back(GroundPredicate(*schema, action, pre, where));
      }
      return guard;
    }
    location = steps[i].location;
  }
  return {};
}

namespace {

TraceStep AsStep(const ProgramState& s) {
  return {std::nullopt, s.action, s.location, s.region};
}

std::string Describe(const Program& p, size_t state) {
  return "state " + std::to_string(state) + " (" +
         ToString(p.states[state].action) + ")";
}

bool SameStep(const TraceStep& a, const TraceStep& b, bool compare_event) {
  return a.action == b.action && a.location == b.location &&
         (!compare_event || a.event == b.event);
}

}  // namespace

Program Fold(const Domain& domain, const Trace& trace) {
  if (trace.steps.empty()) {
    throw Error(ErrorCode::kFoldInvariant, "cannot fold an empty trace");
  }
  const auto& steps = trace.steps;
  size_t n = steps.size();
  size_t begin = 0, len = 0;
  if (trace.loop_begin) {
    begin = *trace.loop_begin;
    len = trace.loop_length();
    if (begin == 0 || len == 0 || begin + 2 * len != n) {
      throw Error(ErrorCode::kFoldInvariant,
                  "loop iterations do not fill the trace tail");
    }
    for (size_t k = 0; k < len; ++k) {
      if (!SameStep(steps[begin + k], steps[begin + len + k], k > 0)) {
        Trace a{{steps.begin() + begin, steps.begin() + begin + len}, {}};
        Trace b{{steps.begin() + begin + len, steps.end()}, {}};
        throw Error(ErrorCode::kFoldInvariant,
                    "loop iterations differ: [" + ToString(a) + "] vs [" +
                        ToString(b) + "]");
      }
    }
    n = begin + len;
  }

  Program p;
  for (size_t i = 0; i < n; ++i) {
    p.states.push_back({i, steps[i].action, steps[i].location, steps[i].region,
                        false});
    if (i > 0) {
      Transition t;
      t.src = i - 1;
      t.dst = i;
      t.kind = steps[i].event ? LabelKind::kEvent : LabelKind::kEpsilon;
      t.event = steps[i].event;
      p.transitions.push_back(std::move(t));
    }
  }
  if (len > 0) {
    const TraceStep& entry = steps[begin + len];
    Transition back;
    back.src = n - 1;
    back.dst = begin;
    back.kind = entry.event ? LabelKind::kEvent : LabelKind::kEpsilon;
    back.event = entry.event;
    back.guard = EntryGuard(domain, steps, begin, begin + len,
                            steps[n - 1].location);
    if (!back.guard.empty()) {
      ProgramState halt{n, MakeCommand("idle"), steps[n - 1].location,
                        steps[n - 1].region, true};
      p.states.push_back(std::move(halt));
      Transition exit;
      exit.src = n - 1;
      exit.dst = n;
      exit.kind = LabelKind::kExit;
      exit.guard = back.guard;
      p.transitions.push_back(std::move(exit));
    }
    p.transitions.push_back(std::move(back));
  }
  p.diagnostics = CheckDeterminism(p);
  return p;
}

Program Attach(const Domain& domain, const Program& host, const Program& branch,
               const std::string& region) {
  std::vector<size_t> anchors;
  for (const auto& s : host.states) {
    if (!s.halt && s.region == region) anchors.push_back(s.id);
  }
  if (anchors.empty()) {
    throw Error(ErrorCode::kAttachmentMissing,
                "attachment region '" + region +
                    "' is not visited by the existing program");
  }
  auto gates = branch.Outgoing(branch.initial);
  if (gates.size() != 1) {
    throw Error(ErrorCode::kFoldInvariant,
                "attached recording must start with a single transition");
  }
  const Transition gate = *gates.front();

  Program out = host;
  std::map<size_t, size_t> remap;
  for (const auto& s : branch.states) {
    if (s.id == branch.initial) continue;
    size_t id = out.states.size();
    remap[s.id] = id;
    ProgramState copy = s;
    copy.id = id;
    out.states.push_back(std::move(copy));
  }

  // Guard: the branch's first non-move action must be able to run.
  std::vector<TraceStep> chain;
  for (const auto& s : branch.states) {
    if (s.id != branch.initial && !s.halt) chain.push_back(AsStep(s));
  }
  std::vector<Predicate> guard =
      EntryGuard(domain, chain, 0, chain.size(),
                 branch.states[branch.initial].location);

  for (size_t a : anchors) {
    Transition t;
    t.src = a;
    t.dst = remap.at(gate.dst);
    t.kind = gate.kind == LabelKind::kEvent ? LabelKind::kEvent
                                            : LabelKind::kEpsilon;
    t.event = gate.event;
    t.guard = guard;
    out.transitions.push_back(std::move(t));
  }
  for (const auto& t : branch.transitions) {
    if (t.src == branch.initial) continue;
    Transition copy = t;
    copy.src = remap.at(t.src);
    copy.dst = remap.at(t.dst);
    out.transitions.push_back(std::move(copy));
  }

  // A loopless branch that ends where it started rejoins the host.
  bool loopless = std::none_of(
      branch.transitions.begin(), branch.transitions.end(),
      [](const Transition& t) { return t.dst <= t.src; });
  const ProgramState* last = nullptr;
  for (const auto& s : branch.states) {
    if (s.id != branch.initial && !s.halt) last = &s;
  }
  if (loopless && last && last->region == region &&
      branch.Outgoing(last->id).empty()) {
    // Rejoin at the latest host state where the robot stood at the same
    // spot, or the latest one in the region.
    size_t rejoin = anchors.back();
    for (size_t a : anchors) {
      if (host.states[a].location == last->location) rejoin = a;
    }
    size_t from = remap.at(last->id);
    std::vector<Transition> copies;
    for (const auto& t : out.transitions) {
      if (t.src == rejoin) {
        Transition c = t;
        c.src = from;
        copies.push_back(std::move(c));
      }
    }
    out.transitions.insert(out.transitions.end(), copies.begin(), copies.end());
  }
  out.diagnostics = CheckDeterminism(out);
  return out;
}

std::vector<std::string> CheckDeterminism(const Program& program) {
  std::vector<std::string> out;
  for (const auto& s : program.states) {
    size_t epsilon = 0;
    std::map<Command, size_t> events;
    for (const Transition* t : program.Outgoing(s.id)) {
      if (t->kind == LabelKind::kEpsilon) ++epsilon;
      if (t->kind == LabelKind::kEvent && t->event) ++events[*t->event];
    }
    if (epsilon > 1) {
      out.push_back("nondeterministic: " + Describe(program, s.id) + " has " +
                    std::to_string(epsilon) + " epsilon successors");
    }
    for (const auto& [event, count] : events) {
      if (count > 1) {
        out.push_back("nondeterministic: " + Describe(program, s.id) + " has " +
                      std::to_string(count) + " successors labelled " +
                      ToString(event));
      }
    }
  }
  return out;
}

}  // namespace sketchsynth
