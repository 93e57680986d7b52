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

#ifndef SKETCHSYNTH_COMMAND_H_
#define SKETCHSYNTH_COMMAND_H_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace sketchsynth {

enum class CommandKind { kAction, kEvent };

// One command argument. Type references ("the toys") and holes are produced by
// the parser and must be grounded by the planner before execution.
struct Arg {
  enum class Kind { kEntity, kRegion, kText, kType, kHole };

  Kind kind = Kind::kHole;
  // Entity id, region id, verbatim text, entity-type name, or (for holes) the
  // category the parameter requires; empty when unconstrained.
  std::string value;

  static Arg Entity(std::string id) { return {Kind::kEntity, std::move(id)}; }
  static Arg Region(std::string id) { return {Kind::kRegion, std::move(id)}; }
  static Arg Text(std::string text) { return {Kind::kText, std::move(text)}; }
  static Arg Type(std::string name) { return {Kind::kType, std::move(name)}; }
  static Arg Hole(std::string category = {}) {
    return {Kind::kHole, std::move(category)};
  }

  bool is_location() const {
    return kind == Kind::kEntity || kind == Kind::kRegion;
  }

  auto operator<=>(const Arg&) const = default;
};

struct Command {
  // Schema name with the casing declared by the domain ("moveTo").
  std::string schema;
  std::vector<Arg> args;

  bool HasHole() const;
  // No holes and no unresolved type references.
  bool IsGround() const;

  auto operator<=>(const Command&) const = default;
};

Command MakeCommand(std::string schema, std::vector<Arg> args = {});

// Canonical single-line form: `idle`, `moveTo: garage`,
// `put: groceries, kitchen cabinets`, `say: "hello"`. Holes print as `____`.
std::string ToString(const Command& command);

// Quotes text the way ToString does for text arguments.
std::string QuoteText(std::string_view text);

std::string_view ArgKindName(Arg::Kind kind);
Arg::Kind ParseArgKind(std::string_view name);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_COMMAND_H_
