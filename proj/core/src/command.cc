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

#include "sketchsynth/command.h"

#include <algorithm>

#include "sketchsynth/error.h"

namespace sketchsynth {

bool Command::HasHole() const {
  return std::any_of(args.begin(), args.end(),
                     [](const Arg& a) { return a.kind == Arg::Kind::kHole; });
}

bool Command::IsGround() const {
  return std::none_of(args.begin(), args.end(), [](const Arg& a) {
    return a.kind == Arg::Kind::kHole || a.kind == Arg::Kind::kType;
  });
}

Command MakeCommand(std::string schema, std::vector<Arg> args) {
  return Command{std::move(schema), std::move(args)};
}

std::string QuoteText(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string ToString(const Command& command) {
  std::string out = command.schema;
  for (size_t i = 0; i < command.args.size(); ++i) {
    out += i == 0 ? ": " : ", ";
    const Arg& arg = command.args[i];
    switch (arg.kind) {
      case Arg::Kind::kText:
        out += QuoteText(arg.value);
        break;
      case Arg::Kind::kHole:
        out += "____";
        break;
      default:
        out += arg.value;
    }
  }
  return out;
}

std::string_view ArgKindName(Arg::Kind kind) {
  switch (kind) {
    case Arg::Kind::kEntity: return "entity";
    case Arg::Kind::kRegion: return "region";
    case Arg::Kind::kText: return "text";
    case Arg::Kind::kType: return "type";
    case Arg::Kind::kHole: return "hole";
  }
  return "hole";
}

Arg::Kind ParseArgKind(std::string_view name) {
  if (name == "entity") return Arg::Kind::kEntity;
  if (name == "region") return Arg::Kind::kRegion;
  if (name == "text") return Arg::Kind::kText;
  if (name == "type") return Arg::Kind::kType;
  if (name == "hole") return Arg::Kind::kHole;
  throw Error(ErrorCode::kInvalidDocument,
              "unknown argument kind '" + std::string(name) + "'");
}

}  // namespace sketchsynth
