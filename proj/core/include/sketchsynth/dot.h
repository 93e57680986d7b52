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

#ifndef SKETCHSYNTH_DOT_H_
#define SKETCHSYNTH_DOT_H_

#include <string>

#include "sketchsynth/assembler.h"

namespace sketchsynth {

// Graphviz rendering of a program. Output depends only on the program, with
// nodes and edges in id and insertion order.
std::string ExportDot(const Program& program);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_DOT_H_
