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

#ifndef SKETCHSYNTH_LANGUAGE_H_
#define SKETCHSYNTH_LANGUAGE_H_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sketchsynth/command.h"
#include "sketchsynth/knowledge.h"

namespace sketchsynth {

// Byte offsets [start, end) of quoted text, excluding the quote characters.
struct QuotedSpan {
  size_t start = 0;
  size_t end = 0;

  bool operator==(const QuotedSpan&) const = default;
};

struct Utterance {
  std::string text;
  std::vector<QuotedSpan> quoted_spans;
};

// Detects quoted spans delimited by straight or curly single/double quotes.
// An apostrophe between two letters ("it's") never opens or closes a quote.
Utterance MakeUtterance(std::string text);

struct Clause {
  std::string text;
  CommandKind kind = CommandKind::kAction;
  size_t order = 0;

  bool operator==(const Clause&) const = default;
};

struct CoreCommand {
  Command command;
  size_t clause_order = 0;
  // Event commands gate the actions that follow them.
  bool gate = false;

  bool operator==(const CoreCommand&) const = default;
};

// Splits on sentence punctuation and detaches a leading event clause ("when I
// arrive, ...") from the main clause. Quoted text is never split. Without a
// comma the main clause starts at the first action verb after the event verb.
// "and" or "then" followed by an action verb starts another action clause.
std::vector<Clause> SplitClauses(const Domain& domain,
                                 const Utterance& utterance);

// Grounding context carried across the clauses of one recording so pronouns
// can refer back to earlier nouns.
struct ParseContext {
  std::optional<Arg> last_noun;
  std::vector<std::string> diagnostics;
};

CoreCommand ParseClause(const Domain& domain, const World& world,
                        const Clause& clause, ParseContext* context = nullptr);

struct ParsedUtterance {
  std::vector<CoreCommand> cores;
  std::vector<std::string> diagnostics;
};

// Throws kUnparseableClause (message names the clause index and text).
ParsedUtterance ParseUtterance(const Domain& domain, const World& world,
                               const Utterance& utterance);

// Lexicon key for a lowercase surface word: the word itself, or a
// suffix-stripped form (s/es/ed/ing) accepted by `is_key`. Empty if none is.
std::string Lemmatize(const std::string& word,
                      const std::function<bool(const std::string&)>& is_key);

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_LANGUAGE_H_
