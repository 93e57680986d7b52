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
#include "sketchsynth/pipeline.h"
#include "suites/suites.h"

namespace sketchsynth {
namespace {

const LoadedCase& Case(const std::string& id) {
  static const std::vector<LoadedCase> cases = LoadCorpus(suites::DataDir());
  for (const auto& c : cases) {
    if (c.spec.id == id) return c;
  }
  throw std::runtime_error("missing case " + id);
}

SessionBundle Bundle(const std::string& id) {
  const LoadedCase& c = Case(id);
  return BuildBundle(DefaultDomain(), c.spec, c.map);
}

SynthesisError Failure(const SessionBundle& b) {
  try {
    Synthesize(DefaultDomain(), b);
  } catch (const SynthesisError& e) {
    return e;
  }
  ADD_FAILURE() << "synthesis succeeded";
  return SynthesisError(Error(ErrorCode::kSynthesis, "none"), "", "");
}

TEST(PipelineTest, GoldenProgramDocument) {
  SessionBundle out = Synthesize(DefaultDomain(), Bundle("grocery-01-golden-a"));
  ASSERT_TRUE(out.program.has_value());
  EXPECT_EQ(EncodeProgram(*out.program), *Case("grocery-01-golden-a").golden);
  ASSERT_EQ(out.results.size(), 1u);
  EXPECT_EQ(out.results[0].cost, 5);
}

TEST(PipelineTest, InputBundleIsUntouched) {
  SessionBundle in = Bundle("failure-speech-01-bring-them-in");
  SessionBundle copy = in;
  SessionBundle out = Synthesize(DefaultDomain(), in);
  EXPECT_EQ(in, copy);
  ASSERT_TRUE(out.synthesized_world.has_value());
  EXPECT_EQ(out.world, in.world);
  EXPECT_GT(out.synthesized_world->entities.size(), in.world.entities.size());
  EXPECT_EQ(out.delta.insertions.size(), 2u);
}

TEST(PipelineTest, EmptySketchNamesStage) {
  SessionBundle b = Bundle("grocery-01-golden-a");
  b.recordings[0].sketch.points.clear();
  SynthesisError e = Failure(b);
  EXPECT_EQ(e.stage(), kStageSketch);
  EXPECT_EQ(e.cause(), ErrorCode::kEmptySketch);
  EXPECT_EQ(e.recording(), "r1");
  EXPECT_NE(std::string(e.what()).find("empty sketch"), std::string::npos) << e.what();
}

TEST(PipelineTest, UnparseableUtteranceNamesStage) {
  SessionBundle b = Bundle("grocery-01-golden-a");
  b.recordings[0].utterance = "Juggle the groceries";
  SynthesisError e = Failure(b);
  EXPECT_EQ(e.stage(), kStageUtterance);
  EXPECT_EQ(e.cause(), ErrorCode::kUnparseableClause);
}

TEST(PipelineTest, AmbiguousLoopNamesStage) {
  const LoadedCase& c = Case("grocery-01-golden-a");
  SessionBundle b = Bundle("grocery-01-golden-a");
  b.recordings[0].sketch = SketchFromWaypoints(
      c.map, {"living room", "garage", "kitchen", "garage", "living room", "garage"});
  SynthesisError e = Failure(b);
  EXPECT_EQ(e.stage(), kStageLoop);
  EXPECT_EQ(e.cause(), ErrorCode::kAmbiguousLoop);
}

TEST(PipelineTest, UnvisitedAttachmentNamesStage) {
  const LoadedCase& c = Case("grocery-01-golden-a");
  SessionBundle b = Bundle("grocery-01-golden-a");
  Recording extra{"r2", "When I say 'hello', say 'hi'",
                  SketchFromWaypoints(c.map, {"bedroom", "hallway"}),
                  AttachmentPoint{"", "r1"}};
  b.recordings.push_back(extra);
  SynthesisError e = Failure(b);
  EXPECT_EQ(e.recording(), "r2");
  EXPECT_EQ(e.stage(), kStageAttach);
  EXPECT_EQ(e.cause(), ErrorCode::kAttachmentMissing);
}

}  // namespace
}  // namespace sketchsynth
