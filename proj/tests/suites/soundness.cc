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

#include <map>
#include <set>
#include <string>

#include "sketchsynth/assembler.h"
#include "sketchsynth/executor.h"
#include "sketchsynth/pipeline.h"
#include "suites/suites.h"

namespace sketchsynth::suites {

namespace {

int Units(const World& w, const std::string& id) {
  auto it = w.entities.find(id);
  int n = it == w.entities.end() ? 0 : it->second.Units();
  return n + (w.holding == id ? 1 : 0);
}

struct Explorer {
  const Domain& domain;
  const Program& program;
  const World& initial;
  const std::vector<Stimulus>& alphabet;
  size_t max_depth;
  size_t runs = 0;
  std::vector<std::string> failures;
  std::vector<std::string> path;

  void Visit(const ExecState& state, size_t depth) {
    if (depth == max_depth || state.halted || !failures.empty()) return;
    for (const auto& stim : alphabet) {
      path.push_back(stim.is_tick() ? "tick" : ToString(*stim.event));
      ++runs;
      try {
        ExecState next = Step(domain, program, state, stim);
        for (const auto& [id, e] : initial.entities) {
          if (Units(next.world, id) != Units(initial, id)) {
            failures.push_back("entity '" + id + "' not conserved after " + Path());
          }
        }
        Visit(next, depth + 1);
      } catch (const RuntimeFault& f) {
        failures.push_back("fault in state " + std::to_string(f.state()) +
                           " after " + Path() + ": " + f.what());
      }
      path.pop_back();
      if (!failures.empty()) return;
    }
  }

  std::string Path() const {
    std::string s = "[";
    for (size_t i = 0; i < path.size(); ++i) s += (i ? ", " : "") + path[i];
    return s + "]";
  }
};

}  // namespace

SuiteResult Soundness(const Domain& domain, const std::vector<LoadedCase>& cases,
                      size_t max_script) {
  SuiteResult result;
  for (const auto& c : cases) {
    SessionBundle b = Synthesize(domain, BuildBundle(domain, c.spec, c.map));
    const Program& program = *b.program;
    ++result.checked;
    const std::string& id = c.spec.id;

    if (!ValidateTrace(program, b.results.front().trace)) {
      result.failures.push_back(id + ": program rejects its first trace");
    }
    for (size_t i = 1; i < b.results.size(); ++i) {
      if (!ValidateTrace(Fold(domain, b.results[i].trace), b.results[i].trace)) {
        result.failures.push_back(id + ": branch " + b.results[i].recording +
                                  " rejects its own trace");
      }
    }

    std::set<Command> labels;
    for (const auto& t : program.transitions) {
      if (t.kind == LabelKind::kEvent) labels.insert(*t.event);
    }
    std::vector<Stimulus> alphabet = {Stimulus::Tick()};
    for (const auto& l : labels) alphabet.push_back(Stimulus::Event(l));

    const World& world = *b.synthesized_world;
    Explorer ex{domain, program, world, alphabet, max_script};
    ex.Visit(Start(program, world), 0);
    for (const auto& f : ex.failures) result.failures.push_back(id + ": " + f);
  }
  return result;
}

}  // namespace sketchsynth::suites
