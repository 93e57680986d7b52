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

#include <fstream>
#include <set>
#include <string>

#include "json.hpp"

#include "sketchsynth/corpus.h"
#include "sketchsynth/documents.h"
#include "sketchsynth/language.h"
#include "suites/suites.h"

namespace sketchsynth::suites {

namespace {

using nlohmann::json;

World CorpusWorld(const Domain& domain, const json& doc) {
  CorpusCase c;
  c.id = "parser";
  c.map = doc.at("map").get<std::string>();
  for (const auto& e : doc.at("entities")) {
    c.entities.push_back({e.at("id"), e.value("type", e.at("id").get<std::string>()),
                          e.at("location")});
  }
  MapModel map = DecodeMap(ReadFile(DataDir() + "/maps/" + c.map + ".json"));
  return BuildBundle(domain, c, map).world;
}

// Unquoted words, lowercase.
std::vector<std::string> Words(const Utterance& u) {
  std::vector<std::string> out;
  std::string cur;
  for (size_t i = 0; i <= u.text.size(); ++i) {
    bool quoted = false;
    for (const auto& s : u.quoted_spans) quoted |= i >= s.start && i < s.end;
    char c = i < u.text.size() ? u.text[i] : ' ';
    if (!quoted && std::isalpha(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  return out;
}

bool HasText(const std::vector<CoreCommand>& cores, const std::string& text) {
  for (const auto& c : cores) {
    for (const auto& a : c.command.args) {
      if (a.kind == Arg::Kind::kText && a.value == text) return true;
    }
  }
  return false;
}

// Quoted speech that must come back byte for byte.
const char* const kSpeech[] = {
    "hello",
    "  two  leading spaces",
    "trailing space ",
    "Stop. Look. Listen.",
    "it's fine, really",
    "don't say \"never\"",
    "commas, semicolons; and colons: all kept",
    "ünïcødé ✓ 東京",
    "tab\there",
    "100% sure?!",
    "a",
    "when I arrive, bring in the groceries",
};

}  // namespace

SuiteResult Parser(const Domain& domain, const std::string& corpus_path) {
  SuiteResult result;
  json doc = json::parse(ReadFile(corpus_path));
  World world = CorpusWorld(domain, doc);

  std::set<std::string> covered;
  auto is_verb = [&](const std::string& w) {
    return domain.verb_lexicon().count(w) > 0;
  };

  for (const auto& u : doc.at("utterances")) {
    ++result.checked;
    std::string text = u.at("text");
    Utterance utt = MakeUtterance(text);
    for (const auto& w : Words(utt)) {
      std::string key = Lemmatize(w, is_verb);
      if (!key.empty()) covered.insert(key);
    }
    auto fail = [&](const std::string& what) {
      result.failures.push_back("\"" + text + "\": " + what);
    };

    std::vector<std::string> quoted;
    for (const auto& s : utt.quoted_spans) {
      quoted.push_back(text.substr(s.start, s.end - s.start));
    }
    if (quoted != u.value("quoted", std::vector<std::string>{})) {
      fail("quoted spans differ");
    }

    if (u.contains("error")) {
      try {
        ParseUtterance(domain, world, utt);
        fail("expected error " + u.at("error").get<std::string>());
      } catch (const Error& e) {
        if (ErrorCodeName(e.code()) != u.at("error").get<std::string>()) {
          fail(std::string("wrong error: ") + e.what());
        }
      }
      continue;
    }

    std::vector<std::string> kinds;
    for (const auto& c : SplitClauses(domain, utt)) {
      kinds.push_back(c.kind == CommandKind::kEvent ? "event" : "action");
    }
    if (kinds != u.at("clauses").get<std::vector<std::string>>()) {
      fail("clause kinds differ");
    }
    try {
      ParsedUtterance parsed = ParseUtterance(domain, world, utt);
      std::vector<std::string> commands;
      for (const auto& c : parsed.cores) {
        commands.push_back(ToString(c.command) + (c.gate ? " [gate]" : ""));
      }
      auto expected = u.at("commands").get<std::vector<std::string>>();
      if (commands != expected) {
        std::string got;
        for (const auto& c : commands) got += (got.empty() ? "" : " | ") + c;
        fail("commands differ, got " + got);
      }
      for (const auto& q : quoted) {
        if (!HasText(parsed.cores, q)) fail("quoted text not preserved: " + q);
      }
    } catch (const Error& e) {
      fail(std::string("unexpected error: ") + e.what());
    }
  }

  for (const auto& [verb, schemas] : domain.verb_lexicon()) {
    if (!covered.count(verb)) {
      result.failures.push_back("lexicon verb '" + verb + "' has no utterance");
    }
  }

  const char* const kTemplates[] = {"Say '%'", "Say \"%\"", "Say “%”",
                                    "When I say '%', go to the kitchen",
                                    "Ask '%'"};
  for (const char* speech : kSpeech) {
    for (std::string tmpl : kTemplates) {
      std::string s = speech;
      // Double quotes inside double quotes would clash. A single quote next
      // to a space does not delimit, so edge whitespace needs double quotes.
      bool is_double = tmpl.find('"') != std::string::npos ||
                       tmpl.find("“") != std::string::npos;
      bool edge_space = std::isspace(static_cast<unsigned char>(s.front())) ||
                        std::isspace(static_cast<unsigned char>(s.back()));
      if (is_double ? s.find('"') != std::string::npos : edge_space) continue;
      ++result.checked;
      std::string text = tmpl.replace(tmpl.find('%'), 1, s);
      try {
        auto parsed = ParseUtterance(domain, world, MakeUtterance(text));
        if (!HasText(parsed.cores, s)) {
          result.failures.push_back("round trip lost bytes: " + text);
        }
      } catch (const Error& e) {
        result.failures.push_back("round trip failed: " + text + ": " + e.what());
      }
    }
  }
  return result;
}

}  // namespace sketchsynth::suites
