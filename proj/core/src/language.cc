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

#include "sketchsynth/language.h"

#include <algorithm>
#include <cctype>

#include "sketchsynth/error.h"

namespace sketchsynth {

namespace {

bool IsWordChar(unsigned char c) { return std::isalnum(c) || c == '-'; }

bool IsAlnum(unsigned char c) { return std::isalnum(c); }

// Length of the quote character at text[i] and whether it may open/close a
// single or double quote. Returns 0 when text[i] is not a quote.
struct QuoteChar {
  size_t len = 0;
  bool is_double = false;
  bool can_open = false;
  bool can_close = false;
};

QuoteChar QuoteAt(std::string_view text, size_t i) {
  QuoteChar q;
  auto three = [&](unsigned char c) {
    return i + 2 < text.size() && (unsigned char)text[i] == 0xE2 &&
           (unsigned char)text[i + 1] == 0x80 &&
           (unsigned char)text[i + 2] == c;
  };
  if (text[i] == '"') {
    q = {1, true, true, true};
  } else if (three(0x9C)) {
    q = {3, true, true, false};
  } else if (three(0x9D)) {
    q = {3, true, false, true};
  } else if (text[i] == '\'' || three(0x98) || three(0x99)) {
    q.len = text[i] == '\'' ? 1 : 3;
    bool left_curly = three(0x98);
    bool right_curly = three(0x99);
    unsigned char prev = i > 0 ? text[i - 1] : ' ';
    unsigned char next = i + q.len < text.size() ? text[i + q.len] : ' ';
    bool apostrophe = IsAlnum(prev) && IsAlnum(next);
    q.can_open = !apostrophe && !right_curly && !IsAlnum(prev) &&
                 !std::isspace(next);
    q.can_close = !apostrophe && !left_curly && !IsAlnum(next) &&
                  !std::isspace(prev);
  }
  return q;
}

bool InSpans(const std::vector<QuotedSpan>& spans, size_t pos) {
  for (const auto& s : spans) {
    if (pos >= s.start && pos < s.end) return true;
  }
  return false;
}

struct Token {
  std::string word;  // lowercase
  size_t start = 0;
  size_t end = 0;
};

// Word tokens outside quoted spans.
std::vector<Token> Tokenize(const Utterance& u) {
  std::vector<Token> out;
  const std::string& t = u.text;
  size_t i = 0;
  while (i < t.size()) {
    if (InSpans(u.quoted_spans, i) || !IsWordChar(t[i]) ||
        (t[i] == '-')) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < t.size() && !InSpans(u.quoted_spans, j) &&
           (IsWordChar(t[j]) ||
            (t[j] == '\'' && j + 1 < t.size() && IsAlnum(t[j + 1]) &&
             j > i))) {
      ++j;
    }
    out.push_back({ToLower(std::string_view(t).substr(i, j - i)), i, j});
    i = j;
  }
  return out;
}

std::string Trim(std::string_view s, std::string_view extra = "") {
  auto drop = [&](unsigned char c) {
    return std::isspace(c) || extra.find(static_cast<char>(c)) != std::string_view::npos;
  };
  size_t b = 0, e = s.size();
  while (b < e && drop(s[b])) ++b;
  while (e > b && drop(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

bool Contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// True when `pos` is neither inside a quoted span nor one of its delimiters.
bool OutsideQuotes(const Utterance& u, size_t pos) {
  for (const auto& s : u.quoted_spans) {
    size_t open = s.start;
    if (open >= 3 && QuoteAt(u.text, open - 3).len == 3) {
      open -= 3;
    } else if (open >= 1) {
      open -= 1;
    }
    size_t close = s.end;
    if (close < u.text.size()) {
      size_t len = QuoteAt(u.text, close).len;
      close += len ? len : 0;
    }
    if (pos >= open && pos < close) return false;
  }
  return true;
}

std::vector<std::pair<size_t, size_t>> SplitSentences(const Utterance& u) {
  std::vector<std::pair<size_t, size_t>> out;
  const std::string& t = u.text;
  size_t start = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    if ((c == '.' || c == '!' || c == '?' || c == ';') && OutsideQuotes(u, i) &&
        (i + 1 == t.size() || std::isspace((unsigned char)t[i + 1]))) {
      out.emplace_back(start, i + 1);
      start = i + 1;
    }
  }
  if (start < t.size()) out.emplace_back(start, t.size());
  std::vector<std::pair<size_t, size_t>> nonempty;
  for (auto [b, e] : out) {
    if (!Trim(std::string_view(t).substr(b, e - b), ".!?;,").empty()) {
      nonempty.emplace_back(b, e);
    }
  }
  return nonempty;
}

bool HasTargetOfKind(const Domain& domain, const std::string& lemma,
                     CommandKind kind) {
  auto it = domain.verb_lexicon().find(lemma);
  if (it == domain.verb_lexicon().end()) return false;
  for (const auto& target : it->second) {
    if (domain.FindSchema(target)->kind == kind) return true;
  }
  return false;
}

std::string VerbLemma(const Domain& domain, const std::string& word) {
  return Lemmatize(word, [&](const std::string& k) {
    return domain.verb_lexicon().count(k) > 0;
  });
}

// Clause text with surrounding whitespace and dangling punctuation removed.
std::string CleanClause(std::string_view s) { return Trim(s, ".!?;,"); }

}  // namespace

std::string Lemmatize(const std::string& word,
                      const std::function<bool(const std::string&)>& is_key) {
  if (word.empty()) return {};
  if (is_key(word)) return word;
  auto ends = [&](std::string_view suffix) {
    return word.size() > suffix.size() + 1 &&
           word.compare(word.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  auto stem = [&](size_t n) { return word.substr(0, word.size() - n); };
  std::vector<std::string> candidates;
  if (ends("ies")) candidates.push_back(stem(3) + "y");
  if (ends("es")) candidates.push_back(stem(2));
  if (ends("s")) candidates.push_back(stem(1));
  if (ends("ed")) {
    candidates.push_back(stem(2));
    candidates.push_back(stem(1));
    std::string s = stem(2);
    if (s.size() > 1 && s.back() == s[s.size() - 2]) candidates.push_back(s.substr(0, s.size() - 1));
  }
  if (ends("ing")) {
    std::string s = stem(3);
    candidates.push_back(s);
    candidates.push_back(s + "e");
    if (s.size() > 1 && s.back() == s[s.size() - 2]) candidates.push_back(s.substr(0, s.size() - 1));
  }
  for (const auto& c : candidates) {
    if (is_key(c)) return c;
  }
  return {};
}

Utterance MakeUtterance(std::string text) {
  Utterance u;
  u.text = std::move(text);
  const std::string& t = u.text;
  size_t i = 0;
  while (i < t.size()) {
    QuoteChar open = QuoteAt(t, i);
    if (open.len == 0 || !open.can_open) {
      ++i;
      continue;
    }
    size_t content = i + open.len;
    size_t j = content;
    bool closed = false;
    while (j < t.size()) {
      QuoteChar q = QuoteAt(t, j);
      if (q.len && q.is_double == open.is_double && q.can_close && j > content) {
        u.quoted_spans.push_back({content, j});
        i = j + q.len;
        closed = true;
        break;
      }
      j += q.len ? q.len : 1;
    }
    if (!closed) {
      // Unterminated quote: the remainder is taken as quoted text.
      if (content < t.size()) u.quoted_spans.push_back({content, t.size()});
      break;
    }
  }
  return u;
}

std::vector<Clause> SplitClauses(const Domain& domain,
                                 const Utterance& utterance) {
  std::vector<Clause> clauses;
  const std::string& t = utterance.text;
  // "grab the cup and put it away": a coordinator directly followed by an
  // action verb starts a new action clause.
  auto push_actions = [&](std::string_view text) {
    Utterance part = MakeUtterance(std::string(text));
    std::vector<Token> tokens = Tokenize(part);
    size_t from = 0;
    for (size_t k = 0; k + 1 < tokens.size(); ++k) {
      if (tokens[k].word != "and" && tokens[k].word != "then") continue;
      std::string lemma = VerbLemma(domain, tokens[k + 1].word);
      if (lemma.empty() || !HasTargetOfKind(domain, lemma, CommandKind::kAction)) {
        continue;
      }
      std::string head = CleanClause(text.substr(from, tokens[k].start - from));
      if (!head.empty()) clauses.push_back({head, CommandKind::kAction, clauses.size()});
      from = tokens[k + 1].start;
    }
    std::string tail = CleanClause(text.substr(from));
    if (!tail.empty()) clauses.push_back({tail, CommandKind::kAction, clauses.size()});
  };
  for (auto [b, e] : SplitSentences(utterance)) {
    Utterance sentence = MakeUtterance(t.substr(b, e - b));
    std::vector<Token> tokens = Tokenize(sentence);
    if (tokens.empty()) {
      std::string text = CleanClause(sentence.text);
      if (!text.empty()) {
        clauses.push_back({text, CommandKind::kAction, clauses.size()});
      }
      continue;
    }
    if (!Contains(domain.event_keywords(), tokens.front().word)) {
      push_actions(sentence.text);
      continue;
    }

    size_t split = std::string::npos;
    for (size_t i = 0; i < sentence.text.size(); ++i) {
      if (sentence.text[i] == ',' && OutsideQuotes(sentence, i)) {
        split = i;
        break;
      }
    }
    size_t rest = split == std::string::npos ? std::string::npos : split + 1;
    if (split == std::string::npos) {
      // No comma: the main clause begins at the first action verb after the
      // event verb ("when I arrive bring in the groceries").
      bool seen_event_verb = false;
      for (size_t k = 1; k < tokens.size(); ++k) {
        std::string lemma = VerbLemma(domain, tokens[k].word);
        if (lemma.empty()) continue;
        if (!seen_event_verb && HasTargetOfKind(domain, lemma, CommandKind::kEvent)) {
          seen_event_verb = true;
          continue;
        }
        if (seen_event_verb && HasTargetOfKind(domain, lemma, CommandKind::kAction)) {
          split = rest = tokens[k].start;
          break;
        }
      }
    }
    if (split == std::string::npos ||
        CleanClause(std::string_view(sentence.text).substr(rest)).empty()) {
      clauses.push_back(
          {CleanClause(sentence.text), CommandKind::kEvent, clauses.size()});
      continue;
    }
    clauses.push_back({CleanClause(std::string_view(sentence.text).substr(0, split)),
                       CommandKind::kEvent, clauses.size()});
    push_actions(std::string_view(sentence.text).substr(rest));
  }
  return clauses;
}

namespace {

bool IsTypeName(const Domain& domain, const std::string& s) {
  return domain.FindType(s) != nullptr;
}

// Grounds a candidate noun phrase, or nullopt if it names nothing known.
std::optional<Arg> GroundPhrase(const Domain& domain, const World& world,
                                const std::string& phrase) {
  // Plural forms are tried on the final word only ("kitchen cabinets").
  auto variants = [&](const std::function<bool(const std::string&)>& is_key)
      -> std::string {
    if (is_key(phrase)) return phrase;
    size_t sp = phrase.rfind(' ');
    std::string head = sp == std::string::npos ? "" : phrase.substr(0, sp + 1);
    std::string last = sp == std::string::npos ? phrase : phrase.substr(sp + 1);
    std::string lemma = Lemmatize(last, [&](const std::string& w) {
      return is_key(head + w);
    });
    return lemma.empty() ? "" : head + lemma;
  };

  std::string region = variants(
      [&](const std::string& k) { return world.regions.count(k) > 0; });
  if (!region.empty()) return Arg::Region(region);

  std::string entity = variants([&](const std::string& k) {
    return world.entities.count(k) > 0 && !IsTypeName(domain, k);
  });
  if (!entity.empty()) return Arg::Entity(entity);

  std::string type =
      variants([&](const std::string& k) { return IsTypeName(domain, k); });
  if (!type.empty()) return Arg::Type(domain.FindType(type)->name);

  std::string noun = variants([&](const std::string& k) {
    return domain.noun_lexicon().count(k) > 0;
  });
  if (!noun.empty()) return Arg::Type(domain.noun_lexicon().at(noun));
  return std::nullopt;
}

bool Compatible(const Domain& domain, const World& world, const ParamSpec& p,
                const Arg& arg) {
  switch (p.type) {
    case ParamSpec::Type::kText:
      return false;
    case ParamSpec::Type::kLocation:
      return arg.kind != Arg::Kind::kText;
    case ParamSpec::Type::kEntity:
      break;
  }
  if (arg.kind == Arg::Kind::kHole) return true;
  if (p.category.empty()) {
    return arg.kind == Arg::Kind::kType || arg.kind == Arg::Kind::kEntity;
  }
  if (arg.kind == Arg::Kind::kType) return domain.IsA(arg.value, p.category);
  if (arg.kind == Arg::Kind::kEntity) {
    auto it = world.entities.find(arg.value);
    return it != world.entities.end() && domain.IsA(it->second.type, p.category);
  }
  return false;
}

}  // namespace

CoreCommand ParseClause(const Domain& domain, const World& world,
                        const Clause& clause, ParseContext* context) {
  ParseContext local;
  ParseContext& ctx = context ? *context : local;
  Utterance u = MakeUtterance(clause.text);
  std::vector<Token> tokens = Tokenize(u);

  const CommandSchema* schema = nullptr;
  size_t verb_index = 0;
  for (size_t i = 0; i < tokens.size() && !schema; ++i) {
    std::string lemma = VerbLemma(domain, tokens[i].word);
    if (lemma.empty()) continue;
    for (const auto& target : domain.verb_lexicon().at(lemma)) {
      const CommandSchema* s = domain.FindSchema(target);
      if (s->kind == clause.kind) {
        schema = s;
        verb_index = i;
        break;
      }
    }
  }
  if (!schema) {
    throw Error(ErrorCode::kUnparseableClause,
                "unparseable clause: \"" + clause.text + "\"");
  }

  // Noun mentions after the verb, longest phrase first.
  std::vector<Arg> mentions;
  // Token range [first, last) of each mention.
  std::vector<std::pair<size_t, size_t>> spans;
  for (size_t i = verb_index + 1; i < tokens.size();) {
    const std::string& w = tokens[i].word;
    if (Contains(domain.pronouns(), w)) {
      mentions.push_back(ctx.last_noun.value_or(Arg::Hole()));
      spans.emplace_back(i, i + 1);
      ++i;
      continue;
    }
    bool matched = false;
    for (size_t len = std::min<size_t>(3, tokens.size() - i); len >= 1; --len) {
      std::string phrase = tokens[i].word;
      for (size_t k = 1; k < len; ++k) phrase += " " + tokens[i + k].word;
      if (len == 1 && Contains(domain.stop_words(), phrase)) break;
      if (auto arg = GroundPhrase(domain, world, phrase)) {
        mentions.push_back(*arg);
        spans.emplace_back(i, i + len);
        if (arg->kind == Arg::Kind::kEntity || arg->kind == Arg::Kind::kType) {
          ctx.last_noun = *arg;
        }
        i += len;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (!VerbLemma(domain, w).empty() && !Contains(domain.stop_words(), w)) {
      ctx.diagnostics.push_back("clause \"" + clause.text +
                                "\": ignored additional verb '" + w + "'");
    }
    ++i;
  }

  CoreCommand core;
  core.command.schema = schema->name;
  core.clause_order = clause.order;
  core.gate = schema->kind == CommandKind::kEvent;
  std::vector<bool> used(mentions.size(), false);
  size_t next_quote = 0;
  for (const auto& p : schema->params) {
    if (p.type == ParamSpec::Type::kText) {
      if (next_quote < u.quoted_spans.size()) {
        const auto& s = u.quoted_spans[next_quote++];
        core.command.args.push_back(
            Arg::Text(u.text.substr(s.start, s.end - s.start)));
        continue;
      }
      // Unquoted text is the rest of the clause, after an addressee bound
      // right behind the verb ("tell people the way").
      size_t from = tokens[verb_index].end;
      size_t k = verb_index + 1;
      while (k < tokens.size() && Contains(domain.stop_words(), tokens[k].word)) ++k;
      for (size_t m = 0; m < spans.size(); ++m) {
        if (used[m] && spans[m].first == k) from = tokens[spans[m].second - 1].end;
      }
      std::string rest = Trim(std::string_view(u.text).substr(from), ",:;");
      core.command.args.push_back(rest.empty() ? Arg::Hole()
                                               : Arg::Text(std::move(rest)));
      continue;
    }
    bool bound = false;
    for (size_t m = 0; m < mentions.size(); ++m) {
      if (used[m] || !Compatible(domain, world, p, mentions[m])) continue;
      used[m] = true;
      Arg arg = mentions[m];
      if (arg.kind == Arg::Kind::kHole) arg.value = p.category;
      core.command.args.push_back(std::move(arg));
      bound = true;
      break;
    }
    if (!bound) core.command.args.push_back(Arg::Hole(p.category));
  }
  return core;
}

ParsedUtterance ParseUtterance(const Domain& domain, const World& world,
                               const Utterance& utterance) {
  ParsedUtterance out;
  ParseContext ctx;
  auto sentences = SplitSentences(utterance);
  if (sentences.size() > 2) {
    out.diagnostics.push_back("utterance has " +
                              std::to_string(sentences.size()) +
                              " sentences; one or two are expected");
  }
  auto clauses = SplitClauses(domain, utterance);
  for (const auto& clause : clauses) {
    try {
      out.cores.push_back(ParseClause(domain, world, clause, &ctx));
    } catch (const Error& e) {
      throw Error(e.code(), "clause " + std::to_string(clause.order) + ": " +
                                e.what());
    }
  }
  out.diagnostics.insert(out.diagnostics.end(), ctx.diagnostics.begin(),
                         ctx.diagnostics.end());
  return out;
}

}  // namespace sketchsynth
