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

#include "sketchsynth/dot.h"

#include <sstream>

namespace sketchsynth {

namespace {

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string GuardText(const std::vector<Predicate>& guard) {
  std::string out;
  for (const auto& p : guard) {
    if (!out.empty()) out += " & ";
    out += ToString(p);
  }
  return out;
}

}  // namespace

std::string ExportDot(const Program& program) {
  std::ostringstream out;
  out << "digraph program {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, style=rounded];\n";
  for (const auto& s : program.states) {
    out << "  s" << s.id << " [label=\"" << Escape(ToString(s.action));
    if (!s.region.empty()) out << "\\n@" << Escape(s.region);
    out << "\"";
    if (s.id == program.initial) out << ", penwidth=2";
    if (s.halt) out << ", shape=doubleoctagon";
    out << "];\n";
  }
  for (const auto& t : program.transitions) {
    std::string label;
    switch (t.kind) {
      case LabelKind::kEvent:
        label = t.event ? ToString(*t.event) : "?";
        break;
      case LabelKind::kEpsilon:
        label = "ε";
        break;
      case LabelKind::kExit:
        label = "exit";
        break;
    }
    if (!t.guard.empty()) {
      std::string g = GuardText(t.guard);
      bool compound = t.guard.size() > 1;
      if (t.kind == LabelKind::kExit) g = compound ? "not (" + g + ")" : "not " + g;
      label += " [" + g + "]";
    }
    out << "  s" << t.src << " -> s" << t.dst << " [label=\"" << Escape(label)
        << "\"";
    if (t.kind == LabelKind::kExit) out << ", style=dashed";
    out << "];\n";
  }
  for (const auto& d : program.diagnostics) {
    out << "  // " << d << "\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sketchsynth
