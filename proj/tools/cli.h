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

#ifndef SKETCHSYNTH_TOOLS_CLI_H_
#define SKETCHSYNTH_TOOLS_CLI_H_

#include <iosfwd>

namespace sketchsynth::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSynthesis = 1;
inline constexpr int kExitBadInput = 2;

// Entry point of the `sketchsynth` command. Documents go to `out`,
// diagnostics and errors to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace sketchsynth::tools

#endif  // SKETCHSYNTH_TOOLS_CLI_H_
