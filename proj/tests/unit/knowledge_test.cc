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

#include "sketchsynth/documents.h"
#include "sketchsynth/error.h"
#include "sketchsynth/knowledge.h"

namespace sketchsynth {
namespace {

World Kitchen() {
  World w;
  w.regions = {"garage", "kitchen"};
  w.entities["groceries"] = {"groceries", "groceries", {{"garage", 2}}, Provenance::kUser};
  w.entities["kitchen cabinets"] = {
      "kitchen cabinets", "kitchen cabinets", {{"kitchen", 1}}, Provenance::kUser};
  w.robot_at = "garage";
  return w;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kSynthesis;
}

TEST(DomainTest, CategoryClosure) {
  const Domain& d = DefaultDomain();
  EXPECT_TRUE(d.IsA("toy", "grabbable"));
  EXPECT_TRUE(d.IsA("toy", "item"));
  EXPECT_TRUE(d.IsA("kitchen cabinets", "container"));
  EXPECT_TRUE(d.IsA("kitchen cabinets", "cabinet"));
  EXPECT_FALSE(d.IsA("person", "container"));
  EXPECT_TRUE(d.IsA("Cup", "CUP"));
  EXPECT_EQ(CodeOf([&] { d.IsA("unicorn", "item"); }), ErrorCode::kUnknownType);
}

TEST(DomainTest, TypesInCategoryAreSorted) {
  const Domain& d = DefaultDomain();
  EXPECT_EQ(d.TypesInCategory("grabbable"),
            (std::vector<std::string>{"book", "cup", "groceries", "laundry", "toy"}));
  EXPECT_EQ(d.TypesInCategory("human"), std::vector<std::string>{"person"});
}

TEST(DomainTest, VerbsMayMapToSeveralSchemas) {
  const Domain& d = DefaultDomain();
  EXPECT_EQ(d.verb_lexicon().at("say"),
            (std::vector<std::string>{"say", "eventSpeech"}));
  EXPECT_NE(d.FindSchema("MOVETO"), nullptr);
  EXPECT_EQ(d.FindSchema("fly"), nullptr);
}

TEST(DomainTest, LoadRejectsBrokenDocuments) {
  DomainDocument dom = DecodeDomain(BundledDomainDocument());
  LexiconDocument lex = DecodeLexicon(BundledLexiconDocument());

  DomainDocument dup = dom;
  dup.entity_types.push_back(dup.entity_types.front());
  EXPECT_EQ(CodeOf([&] { LoadDomain(dup, lex); }), ErrorCode::kDuplicateName);

  DomainDocument unknown = dom;
  unknown.entity_types.push_back({"robot dog", {"pet"}});
  EXPECT_EQ(CodeOf([&] { LoadDomain(unknown, lex); }), ErrorCode::kUnknownCategory);

  LexiconDocument bad = lex;
  bad.verbs["dance"] = {"dance"};
  EXPECT_EQ(CodeOf([&] { LoadDomain(dom, bad); }), ErrorCode::kLexiconTargetMissing);
}

TEST(WorldTest, InsertPicksFreshIdsAndLeavesInputAlone) {
  const Domain& d = DefaultDomain();
  World w = Kitchen();
  InsertResult a = WorldInsert(d, w, "toy", "garage", Provenance::kSynthesized);
  EXPECT_EQ(a.id, "toy");
  InsertResult b = WorldInsert(d, a.world, "toy", "kitchen", Provenance::kSynthesized);
  EXPECT_EQ(b.id, "toy_2");
  EXPECT_EQ(w, Kitchen());
  EXPECT_EQ(b.world.entities.at("toy_2").placements.at("kitchen"), 1);
  EXPECT_EQ(b.world.entities.at("toy_2").provenance, Provenance::kSynthesized);
  EXPECT_EQ(CodeOf([&] { WorldInsert(d, w, "unicorn", "garage", Provenance::kUser); }),
            ErrorCode::kUnknownType);
}

TEST(WorldTest, ContainmentChainAndRegion) {
  const Domain& d = DefaultDomain();
  World w = WorldInsert(d, Kitchen(), "cup", "kitchen cabinets", Provenance::kUser).world;
  EXPECT_EQ(ContainmentChain(w, "cup"),
            (std::vector<std::string>{"cup", "kitchen cabinets", "kitchen"}));
  EXPECT_EQ(RegionOf(w, "cup"), "kitchen");
  EXPECT_EQ(RegionOf(w, "garage"), "garage");
  EXPECT_EQ(EntitiesAt(d, w, "kitchen"),
            (std::vector<std::string>{"cup", "kitchen cabinets"}));
  EXPECT_EQ(EntitiesAt(d, w, "kitchen", "grabbable"), std::vector<std::string>{"cup"});
}

TEST(WorldTest, ValidateRejectsDanglingLocations) {
  const Domain& d = DefaultDomain();
  World w = Kitchen();
  ValidateWorld(d, w);
  w.entities["groceries"].placements = {{"attic", 1}};
  EXPECT_EQ(CodeOf([&] { ValidateWorld(d, w); }), ErrorCode::kUnknownLocation);
}

TEST(WorldTest, GrabAndPutMoveOneUnit) {
  const Domain& d = DefaultDomain();
  World w = Kitchen();
  Command grab = MakeCommand("grab", {Arg::Entity("groceries")});
  ASSERT_TRUE(PreconditionsHold(d, w, grab));
  World held = ApplyCommand(d, w, grab);
  EXPECT_EQ(held.holding, "groceries");
  EXPECT_EQ(held.entities.at("groceries").placements.at("garage"), 1);

  Command put = MakeCommand("put", {Arg::Entity("groceries"), Arg::Entity("kitchen cabinets")});
  EXPECT_FALSE(PreconditionsHold(d, held, put));
  auto failed = FailedPreconditions(d, held, put);
  ASSERT_EQ(failed.size(), 1u);
  EXPECT_EQ(failed[0].name, PredicateName::kRobotAt);

  held.robot_at = "kitchen cabinets";
  World done = ApplyCommand(d, held, put);
  EXPECT_FALSE(done.holding.has_value());
  EXPECT_EQ(done.entities.at("groceries").placements.at("kitchen cabinets"), 1);
  EXPECT_EQ(done.entities.at("groceries").Units(), 2);
}

TEST(WorldTest, GrabAwayFromTheItemFaults) {
  const Domain& d = DefaultDomain();
  World w = Kitchen();
  w.robot_at = "kitchen";
  Command grab = MakeCommand("grab", {Arg::Entity("groceries")});
  EXPECT_FALSE(PreconditionsHold(d, w, grab));
  EXPECT_EQ(CodeOf([&] { ApplyCommand(d, w, grab); }), ErrorCode::kRuntimeFault);
}

TEST(PredicateTest, EvalRequiresGroundPredicates) {
  World w = Kitchen();
  EXPECT_TRUE(EvalPredicate(w, {PredicateName::kRobotAt, {"garage"}}));
  EXPECT_TRUE(EvalPredicate(w, {PredicateName::kHandsFree, {}}));
  EXPECT_TRUE(EvalPredicate(w, {PredicateName::kAt, {"groceries", "garage"}}));
  EXPECT_FALSE(EvalPredicate(w, {PredicateName::kAt, {"groceries", "kitchen"}}));
  EXPECT_TRUE(EvalPredicate(w, {PredicateName::kHolding, {"groceries"}, true}));
  EXPECT_EQ(CodeOf([&] { EvalPredicate(w, {PredicateName::kAt, {"$item", "@here"}}); }),
            ErrorCode::kUngroundPredicate);
}

}  // namespace
}  // namespace sketchsynth
