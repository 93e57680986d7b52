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

#include <algorithm>
#include <filesystem>

#include "sketchsynth/corpus.h"
#include "sketchsynth/error.h"
#include "sketchsynth/geomap.h"
#include "suites/suites.h"

namespace sketchsynth {
namespace {

const std::vector<LoadedCase>& Cases() {
  static const std::vector<LoadedCase> cases = LoadCorpus(suites::DataDir());
  return cases;
}

std::vector<std::string> CaseIds() {
  std::vector<std::string> ids;
  for (const auto& e : std::filesystem::directory_iterator(suites::DataDir() + "/corpus")) {
    ids.push_back(e.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

class CorpusCaseTest : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusCaseTest, MatchesExpectations) {
  auto it = std::find_if(Cases().begin(), Cases().end(),
                         [](const LoadedCase& c) { return c.spec.id == GetParam(); });
  ASSERT_NE(it, Cases().end());
  CaseOutcome out = RunCase(DefaultDomain(), *it);
  for (const auto& f : out.failures) ADD_FAILURE() << f;
  EXPECT_TRUE(out.passed);
}

INSTANTIATE_TEST_SUITE_P(Scenarios, CorpusCaseTest, ::testing::ValuesIn(CaseIds()),
                         [](const ::testing::TestParamInfo<std::string>& info) {
                           std::string name = info.param;
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });

TEST(CorpusTest, EveryScenarioIsCovered) {
  std::map<std::string, size_t> per;
  for (const auto& c : Cases()) ++per[c.spec.scenario];
  for (const char* s : {"grocery", "tidying", "hospital", "spill", "failure"}) {
    EXPECT_GE(per[s], 3u) << s;
  }
  EXPECT_EQ(Cases().size(), CaseIds().size());
}

TEST(CorpusTest, WaypointStrokesVisitTheirRegions) {
  const LoadedCase& c = Cases().front();
  std::vector<std::string> stops = {"living room", "garage", "kitchen"};
  RegionSequence seq = ParseSketch(c.map, SketchFromWaypoints(c.map, stops), true);
  EXPECT_EQ(seq.regions, stops);
  EXPECT_THROW(SketchFromWaypoints(c.map, {"attic"}), Error);
}

TEST(CorpusTest, StimulusLiterals) {
  const Domain& d = DefaultDomain();
  EXPECT_TRUE(ParseStimulus(d, "tick").is_tick());
  EXPECT_EQ(ParseStimulus(d, "eventSpeech: \"yes\"").event,
            MakeCommand("eventSpeech", {Arg::Text("yes")}));
}

}  // namespace
}  // namespace sketchsynth
