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

#include "sketchsynth/error.h"
#include "sketchsynth/knowledge.h"
#include "sketchsynth/language.h"
#include "suites/suites.h"

namespace sketchsynth {
namespace {

World Home() {
  const Domain& d = DefaultDomain();
  World w;
  w.regions = {"garage", "kitchen", "bedroom"};
  w = WorldInsert(d, w, "groceries", "garage", Provenance::kUser).world;
  w = WorldInsert(d, w, "kitchen cabinets", "kitchen", Provenance::kUser).world;
  return w;
}

std::vector<std::string> Cores(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& c : ParseUtterance(DefaultDomain(), Home(), MakeUtterance(text)).cores) {
    out.push_back(ToString(c.command) + (c.gate ? " [gate]" : ""));
  }
  return out;
}

std::vector<std::string> Quoted(const std::string& text) {
  Utterance u = MakeUtterance(text);
  std::vector<std::string> out;
  for (const auto& s : u.quoted_spans) out.push_back(text.substr(s.start, s.end - s.start));
  return out;
}

TEST(UtteranceTest, QuoteDetection) {
  EXPECT_EQ(Quoted("say 'hi'"), std::vector<std::string>{"hi"});
  EXPECT_EQ(Quoted("say \"it's\""), std::vector<std::string>{"it's"});
  EXPECT_EQ(Quoted("it's the robot's job"), std::vector<std::string>{});
  EXPECT_EQ(Quoted("say ‘curly’ and “double”"),
            (std::vector<std::string>{"curly", "double"}));
  // An unterminated quote runs to the end.
  EXPECT_EQ(Quoted("say 'never closed"), std::vector<std::string>{"never closed"});
}

TEST(ClauseTest, EventClauseWithAndWithoutComma) {
  const Domain& d = DefaultDomain();
  auto with = SplitClauses(d, MakeUtterance("When I arrive, bring in the groceries"));
  ASSERT_EQ(with.size(), 2u);
  EXPECT_EQ(with[0].kind, CommandKind::kEvent);
  EXPECT_EQ(with[0].text, "When I arrive");
  EXPECT_EQ(with[1].text, "bring in the groceries");

  auto without = SplitClauses(d, MakeUtterance("when I arrive bring in the groceries"));
  ASSERT_EQ(without.size(), 2u);
  EXPECT_EQ(without[1].text, "bring in the groceries");
}

TEST(ClauseTest, QuotedPunctuationDoesNotSplit) {
  auto c = SplitClauses(DefaultDomain(), MakeUtterance("Say 'Stop. Look.'. Then wait"));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].text, "Say 'Stop. Look.'");
  EXPECT_EQ(c[1].text, "wait");
}

TEST(ClauseTest, CoordinatedActionsSplit) {
  auto c = SplitClauses(DefaultDomain(),
                        MakeUtterance("grab the groceries and put them in the kitchen"));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1].text, "put them in the kitchen");
  // "and" inside a noun phrase stays.
  EXPECT_EQ(SplitClauses(DefaultDomain(), MakeUtterance("say 'salt and pepper'")).size(),
            1u);
}

TEST(ParseTest, GoldenUtterance) {
  EXPECT_EQ(Cores("When I arrive, bring in the groceries"),
            (std::vector<std::string>{"eventApproach [gate]", "put: groceries, ____"}));
}

TEST(ParseTest, PronounsReferBack) {
  EXPECT_EQ(Cores("Grab the groceries. Put them in the kitchen cabinets"),
            (std::vector<std::string>{"grab: groceries",
                                      "put: groceries, kitchen cabinets"}));
}

TEST(ParseTest, UnknownVerbIsUnparseable) {
  try {
    Cores("Juggle the groceries");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnparseableClause);
    EXPECT_NE(std::string(e.what()).find("clause 0"), std::string::npos);
  }
}

TEST(LemmatizeTest, SuffixStripping) {
  auto is = [](std::set<std::string> keys) {
    return [keys](const std::string& w) { return keys.count(w) > 0; };
  };
  EXPECT_EQ(Lemmatize("carries", is({"carry"})), "carry");
  EXPECT_EQ(Lemmatize("grabbed", is({"grab"})), "grab");
  EXPECT_EQ(Lemmatize("placed", is({"place"})), "place");
  EXPECT_EQ(Lemmatize("storing", is({"store"})), "store");
  EXPECT_EQ(Lemmatize("boxes", is({"box"})), "box");
  EXPECT_EQ(Lemmatize("sings", is({"say"})), "");
}

TEST(ParserSuiteTest, CheckedInCorpus) {
  suites::SuiteResult r = suites::Parser(DefaultDomain(), suites::ParserCorpusPath());
  EXPECT_GE(r.checked, 40u);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
}

}  // namespace
}  // namespace sketchsynth
