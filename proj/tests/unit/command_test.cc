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

#include "sketchsynth/command.h"
#include "sketchsynth/documents.h"
#include "sketchsynth/error.h"

namespace sketchsynth {
namespace {

TEST(CommandTest, CanonicalForms) {
  EXPECT_EQ(ToString(MakeCommand("idle")), "idle");
  EXPECT_EQ(ToString(MakeCommand("moveTo", {Arg::Region("garage")})), "moveTo: garage");
  EXPECT_EQ(ToString(MakeCommand("put", {Arg::Entity("groceries"),
                                         Arg::Entity("kitchen cabinets")})),
            "put: groceries, kitchen cabinets");
  EXPECT_EQ(ToString(MakeCommand("say", {Arg::Text("hello")})), "say: \"hello\"");
  EXPECT_EQ(ToString(MakeCommand("put", {Arg::Type("toy"), Arg::Hole("container")})),
            "put: toy, ____");
}

TEST(CommandTest, QuoteTextEscapes) {
  EXPECT_EQ(QuoteText("a\"b\\c"), "\"a\\\"b\\\\c\"");
  EXPECT_EQ(QuoteText(""), "\"\"");
}

TEST(CommandTest, GroundnessFollowsArgumentKinds) {
  Command ground = MakeCommand("grab", {Arg::Entity("cup")});
  EXPECT_TRUE(ground.IsGround());
  EXPECT_FALSE(ground.HasHole());

  Command typed = MakeCommand("grab", {Arg::Type("cup")});
  EXPECT_FALSE(typed.IsGround());
  EXPECT_FALSE(typed.HasHole());

  Command holed = MakeCommand("grab", {Arg::Hole("grabbable")});
  EXPECT_FALSE(holed.IsGround());
  EXPECT_TRUE(holed.HasHole());
}

TEST(CommandTest, ArgKindNamesRoundTrip) {
  for (auto k : {Arg::Kind::kEntity, Arg::Kind::kRegion, Arg::Kind::kText,
                 Arg::Kind::kType, Arg::Kind::kHole}) {
    EXPECT_EQ(ParseArgKind(ArgKindName(k)), k);
  }
}

TEST(CommandTest, OrderingIsTotal) {
  Command a = MakeCommand("grab", {Arg::Entity("a")});
  Command b = MakeCommand("grab", {Arg::Entity("b")});
  EXPECT_LT(a, b);
  EXPECT_EQ(a, MakeCommand("grab", {Arg::Entity("a")}));
}

TEST(CommandLiteralTest, ParsesEventsAndText) {
  const Domain& d = DefaultDomain();
  EXPECT_EQ(ParseCommandLiteral(d, "eventApproach"), MakeCommand("eventApproach"));
  EXPECT_EQ(ParseCommandLiteral(d, "  eventSpeech: \"go home\" "),
            MakeCommand("eventSpeech", {Arg::Text("go home")}));
  // Case-insensitive schema lookup keeps the declared casing.
  EXPECT_EQ(ParseCommandLiteral(d, "EVENTAPPROACH").schema, "eventApproach");
}

TEST(CommandLiteralTest, InvertsToStringForGroundCommands) {
  const Domain& d = DefaultDomain();
  for (const Command& c :
       {MakeCommand("say", {Arg::Text("quote \" and \\ backslash, comma")}),
        MakeCommand("put", {Arg::Entity("groceries"), Arg::Entity("kitchen cabinets")}),
        MakeCommand("tell", {Arg::Entity("person"), Arg::Text("hi")})}) {
    EXPECT_EQ(ParseCommandLiteral(d, ToString(c)), c) << ToString(c);
  }
}

TEST(CommandLiteralTest, RejectsUnknownAndUnterminated) {
  const Domain& d = DefaultDomain();
  EXPECT_THROW(ParseCommandLiteral(d, "dance"), Error);
  EXPECT_THROW(ParseCommandLiteral(d, "say: \"open"), Error);
}

}  // namespace
}  // namespace sketchsynth
