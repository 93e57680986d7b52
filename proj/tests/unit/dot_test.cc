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

#include <gtest/gtest.h>

#include "sketchsynth/corpus.h"
#include "sketchsynth/documents.h"
#include "sketchsynth/dot.h"
#include "suites/suites.h"

namespace sketchsynth {
namespace {

Program Golden(const std::string& id) {
  return DecodeProgram(ReadFile(suites::DataDir() + "/golden/" + id + ".program.json"));
}

TEST(DotTest, GoldenLoopRendering) {
  EXPECT_EQ(ExportDot(Golden("grocery-02-golden-b")),
            "digraph program {\n"
            "  rankdir=LR;\n"
            "  node [shape=box, style=rounded];\n"
            "  s0 [label=\"idle\\n@living room\", penwidth=2];\n"
            "  s1 [label=\"moveTo: garage\\n@garage\"];\n"
            "  s2 [label=\"grab: groceries\\n@garage\"];\n"
            "  s3 [label=\"moveTo: kitchen cabinets\\n@kitchen\"];\n"
            "  s4 [label=\"put: groceries, kitchen cabinets\\n@kitchen\"];\n"
            "  s5 [label=\"idle\\n@kitchen\", shape=doubleoctagon];\n"
            "  s0 -> s1 [label=\"eventApproach\"];\n"
            "  s1 -> s2 [label=\"ε\"];\n"
            "  s2 -> s3 [label=\"ε\"];\n"
            "  s3 -> s4 [label=\"ε\"];\n"
            "  s4 -> s5 [label=\"exit [not (hands_free & at(groceries, garage))]\", "
            "style=dashed];\n"
            "  s4 -> s1 [label=\"ε [hands_free & at(groceries, garage)]\"];\n"
            "}\n");
}

TEST(DotTest, StableAcrossRunsAndRoundTrips) {
  for (const auto& c : LoadCorpus(suites::DataDir())) {
    if (!c.golden) continue;
    Program p = DecodeProgram(*c.golden);
    std::string dot = ExportDot(p);
    EXPECT_EQ(ExportDot(p), dot) << c.spec.id;
    EXPECT_EQ(ExportDot(DecodeProgram(EncodeProgram(p))), dot) << c.spec.id;
  }
}

TEST(DotTest, EscapesQuotesAndSingleGuards) {
  Program p;
  p.states = {{0, MakeCommand("idle"), "hall", "hall", false},
              {1, MakeCommand("say", {Arg::Text("say \"hi\"\\now")}), "hall", "hall", false},
              {2, MakeCommand("idle"), "hall", "hall", true}};
  p.transitions = {
      {0, 1, LabelKind::kEvent, MakeCommand("eventSpeech", {Arg::Text("yes")}), {}},
      {1, 2, LabelKind::kExit, std::nullopt, {{PredicateName::kHandsFree, {}}}}};
  std::string dot = ExportDot(p);
  EXPECT_NE(dot.find(R"(say: \"say \\\"hi\\\"\\\\now\")"), std::string::npos) << dot;
  EXPECT_NE(dot.find("exit [not hands_free]"), std::string::npos) << dot;
}

}  // namespace
}  // namespace sketchsynth
