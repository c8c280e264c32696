// Copyright 2026 The spanalign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spanalign/iu_extraction.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>

#include "spanalign/alignment_metrics.h"
#include "spanalign/errors.h"
#include "spanalign/tokenizer.h"
#include "spanalign/utf8.h"

namespace spanalign {
namespace {

using WordSet = std::unordered_set<std::string_view>;

const WordSet& Determiners() {
  static const WordSet kWords = {
      "the", "a",     "an",   "this", "these", "those", "his",  "her",
      "its", "their", "our",  "my",   "your",  "some",  "any",  "each",
      "every", "no",  "both", "another", "several", "many", "such"};
  return kWords;
}

const WordSet& Prepositions() {
  static const WordSet kWords = {
      "in",      "on",      "at",     "of",      "for",   "with",  "by",
      "from",    "into",    "over",   "under",   "after", "before",
      "during",  "about",   "against", "between", "through", "without",
      "within",  "near",    "across", "among",   "per",   "via",   "than",
      "upon",    "toward",  "towards", "despite", "amid"};
  return kWords;
}

const WordSet& Auxiliaries() {
  static const WordSet kWords = {
      "is",    "are",   "was",   "were",  "be",    "been",  "being",
      "am",    "has",   "have",  "had",   "do",    "does",  "did",
      "will",  "would", "shall", "should", "can",  "could", "may",
      "might", "must",  "isn't", "wasn't", "aren't", "weren't", "hasn't",
      "haven't", "hadn't", "doesn't", "didn't", "won't", "can't",
      "couldn't", "wouldn't", "shouldn't"};
  return kWords;
}

// Finite and base forms of frequent verbs whose past tense does not end in
// -ed, plus frequent -s forms.
const WordSet& VerbLexicon() {
  static const WordSet kWords = {
      "ate",      "eat",     "eats",    "drank",   "drink",   "drinks",
      "said",     "say",     "says",    "went",    "go",      "goes",
      "gone",     "made",    "make",    "makes",   "took",    "take",
      "takes",    "taken",   "gave",    "give",    "gives",   "given",
      "found",    "find",    "finds",   "told",    "tell",    "tells",
      "came",     "come",    "comes",   "saw",     "see",     "sees",
      "seen",     "knew",    "know",    "knows",   "known",   "got",
      "get",      "gets",    "left",    "leave",   "leaves",  "ran",
      "run",      "runs",    "won",     "win",     "wins",    "lost",
      "lose",     "loses",   "met",     "meet",    "meets",   "paid",
      "pay",      "pays",    "sold",    "sell",    "sells",   "bought",
      "buy",      "buys",    "built",   "build",   "builds",  "held",
      "hold",     "holds",   "kept",    "keep",    "keeps",   "brought",
      "bring",    "brings",  "thought", "think",   "thinks",  "began",
      "begin",    "begins",  "begun",   "wrote",   "write",   "writes",
      "written",  "spoke",   "speak",   "speaks",  "spoken",  "stood",
      "stand",    "stands",  "fell",    "fall",    "falls",   "rose",
      "rise",     "rises",   "led",     "lead",    "leads",   "sent",
      "send",     "sends",   "spent",   "spend",   "spends",  "struck",
      "strike",   "strikes", "hit",     "hits",    "put",     "puts",
      "became",   "become",  "becomes", "felt",    "feel",    "feels",
      "fled",     "flee",    "flees",   "grew",    "grow",    "grows",
      "grown",    "threw",   "throw",   "throws",  "drew",    "draw",
      "draws",    "flew",    "fly",     "flies",   "chose",   "choose",
      "chooses",  "broke",   "break",   "breaks",  "broken",  "caught",
      "catch",    "catches", "taught",  "teach",   "teaches", "fought",
      "fight",    "fights",  "sought",  "seek",    "seeks",   "lives",
      "live",     "want",    "wants",   "need",    "needs",   "help",
      "helps",    "show",    "shows",   "shown",   "seem",    "seems",
      "remain",   "remains", "include", "includes", "announce",
      "announces", "report", "reports", "claim",   "claims",  "warn",
      "warns",    "vote",    "votes",   "face",    "faces",   "continue",
      "continues", "agree",  "agrees",  "urge",    "urges",   "offer",
      "offers",   "hope",    "hopes",   "expect",  "expects", "read",
      "reads",    "sat",     "sit",     "sits",    "slept",   "sleep",
      "sleeps",   "swam",    "swim",    "swims",   "sang",    "sing",
      "sings",    "wore",    "wear",    "wears",   "shot",    "shoot",
      "shoots",   "hid",     "hide",    "hides",   "bit",     "rode",
      "ride",     "rides",   "drove",   "drive",   "drives",  "forgot",
      "forget",   "forgets", "understood", "understand", "understands",
      "lay",      "lie",     "lies",    "lied",    "dug",     "dig",
      "sank",     "sink",    "sinks",   "shut",    "quit",    "cost",
      "costs",    "spread",  "spreads", "fed",     "feed",    "feeds",
      "bled",     "hung",    "swore",   "woke",    "beat",    "beats",
      "works",    "work",    "plays",   "play",    "looks",   "look",
      "calls",    "call",    "opens",   "open",    "moves",   "move",
      "believes", "believe", "wins",    "owns",    "own",     "serves",
      "serve",    "provides", "provide", "plans",  "lets",    "let",
      "costs",    "rejects", "reject",  "denies",  "deny",    "tries",
      "try",      "insists", "insist",  "returns", "return",  "starts",
      "start",    "ends",
      "burst",    "bursts",  "attract", "attracts", "employ",  "employs",
      "contain",  "contains", "require", "requires", "produce", "produces",
      "cause",    "causes",  "affect",  "affects", "receive", "receives",
      "support",  "supports", "oppose", "opposes", "describe", "describes",
      "suggest",  "suggests", "argue",  "argues",  "add",     "adds",
      "set",      "sets",    "cut",     "cuts",    "split",   "splits",
      "meant",    "mean",    "means",   "dealt",   "deal",    "deals",
      "remember", "remembers", "wants",
      "extend",   "extends", "fund",    "funds",   "expand",  "expands",
      "raise",    "raises",  "rise",    "rises",   "run",     "runs",
      "approve",  "approves", "follow", "follows", "worry",   "worries",
      "reach",    "reaches", "grow",    "grows",   "fall",    "falls",
      "drop",     "drops",   "launch",  "launches", "build",  "builds",
      "reduce",   "reduces", "increase", "increases", "praise",
      "praises"};
  return kWords;
}

const WordSet& Coordinators() {
  static const WordSet kWords = {"and",     "but",    "or",    "yet",
                                 "while",   "whereas", "because", "although",
                                 "though"};
  return kWords;
}

const WordSet& RelativePronouns() {
  static const WordSet kWords = {"who", "which"};
  return kWords;
}

// Words ending in -ed that are not verbs.
const WordSet& EdNonVerbs() {
  static const WordSet kWords = {"hundred", "speed", "seed", "breed",
                                 "greed", "indeed", "sacred", "naked",
                                 "wicked", "bed",   "red",   "shed"};
  return kWords;
}

bool Contains(const WordSet& set, const std::string& w) {
  return set.count(std::string_view(w)) > 0;
}

bool IsClausePunctuation(const Token& t) {
  return !t.is_word && (t.raw == "," || t.raw == ";" || t.raw == ":");
}

struct Tagged {
  Token token;
  bool verb = false;
};

std::vector<Tagged> Tag(std::vector<Token> tokens) {
  std::vector<Tagged> out;
  out.reserve(tokens.size());
  const Token* previous_word = nullptr;
  for (Token& t : tokens) {
    Tagged tagged{std::move(t), false};
    const Token& tok = tagged.token;
    if (tok.is_word) {
      const std::string& w = tok.lower;
      const bool after_determiner =
          previous_word != nullptr &&
          (Contains(Determiners(), previous_word->lower) ||
           Contains(Prepositions(), previous_word->lower));
      if (Contains(Auxiliaries(), w)) {
        tagged.verb = true;
      } else if (after_determiner) {
        tagged.verb = false;
      } else if (Contains(VerbLexicon(), w)) {
        tagged.verb = true;
      } else if (w.size() >= 4 && w.ends_with("ed") &&
                 !Contains(EdNonVerbs(), w)) {
        tagged.verb = true;
      }
    }
    out.push_back(std::move(tagged));
    if (out.back().token.is_word) previous_word = &out.back().token;
  }
  return out;
}

struct Piece {
  size_t begin = 0;  // token range [begin, end)
  size_t end = 0;
  bool relative = false;
  bool has_verb = false;
  // Word tokens before the first verb; empty when the clause starts with
  // its verb.
  size_t subject_begin = 0;
  size_t subject_end = 0;
};

bool HasVerb(const std::vector<Tagged>& t, size_t begin, size_t end) {
  for (size_t i = begin; i < end; ++i) {
    if (t[i].verb) return true;
  }
  return false;
}

bool IsCandidate(const Tagged& t) {
  if (IsClausePunctuation(t.token)) return true;
  return t.token.is_word && (Contains(Coordinators(), t.token.lower) ||
                             Contains(RelativePronouns(), t.token.lower));
}

// Trims punctuation and leading coordinators; returns false when nothing
// but those remain.
bool Trim(const std::vector<Tagged>& t, Piece& p) {
  while (p.begin < p.end &&
         (!t[p.begin].token.is_word ||
          Contains(Coordinators(), t[p.begin].token.lower))) {
    ++p.begin;
  }
  while (p.end > p.begin && !t[p.end - 1].token.is_word) --p.end;
  return p.begin < p.end;
}

std::vector<Piece> Segment(const std::vector<Tagged>& t) {
  std::vector<size_t> candidates;
  for (size_t i = 0; i < t.size(); ++i) {
    if (IsCandidate(t[i])) candidates.push_back(i);
  }
  std::vector<Piece> pieces;
  size_t start = 0;
  bool start_relative = false;
  for (size_t k = 0; k < candidates.size(); ++k) {
    const size_t c = candidates[k];
    if (c < start) continue;
    const size_t next = k + 1 < candidates.size() ? candidates[k + 1] : t.size();
    const bool relative = Contains(RelativePronouns(), t[c].token.lower);
    bool accept;
    if (relative) {
      accept = HasVerb(t, c + 1, next);
    } else {
      accept = HasVerb(t, start, c) && HasVerb(t, c + 1, next);
    }
    if (!accept) continue;
    pieces.push_back({start, c, start_relative});
    start = relative ? c : c + 1;
    start_relative = relative;
  }
  pieces.push_back({start, t.size(), start_relative});

  std::vector<Piece> out;
  for (Piece p : pieces) {
    if (p.relative) ++p.begin;  // drop the pronoun itself
    if (!Trim(t, p)) continue;
    p.has_verb = HasVerb(t, p.begin, p.end);
    p.subject_begin = p.begin;
    p.subject_end = p.begin;
    if (p.has_verb) {
      size_t i = p.begin;
      while (i < p.end && !t[i].verb) ++i;
      p.subject_end = i;
      while (p.subject_end > p.subject_begin &&
             !t[p.subject_end - 1].token.is_word) {
        --p.subject_end;
      }
    }
    out.push_back(p);
  }
  return out;
}

CharRange TokenRange(const std::vector<Tagged>& t, size_t begin, size_t end) {
  return {t[begin].token.start, t[end - 1].token.end};
}

}  // namespace

std::vector<InformationUnit> ExtractUnits(const ParentText& parent,
                                          const Sentence& sentence) {
  const std::vector<Tagged> tagged = Tag(Tokenize(
      parent.code_points().substr(sentence.offset, sentence.length),
      sentence.offset, /*keep_punctuation=*/true));
  const std::vector<Piece> pieces = Segment(tagged);

  std::vector<InformationUnit> out;
  std::set<Span> seen;
  const Piece* antecedent = nullptr;    // latest verbless phrase
  const Piece* last_subject = nullptr;  // latest clause with its own subject
  for (const Piece& p : pieces) {
    if (!p.has_verb) {
      antecedent = &p;
      continue;
    }
    std::vector<CharRange> ranges = {TokenRange(tagged, p.begin, p.end)};
    const bool own_subject = p.subject_end > p.subject_begin && !p.relative;
    if (!own_subject) {
      if (antecedent != nullptr) {
        ranges.push_back(TokenRange(tagged, antecedent->begin, antecedent->end));
      } else if (last_subject != nullptr) {
        ranges.push_back(TokenRange(tagged, last_subject->subject_begin,
                                    last_subject->subject_end));
      }
    } else {
      last_subject = &p;
    }
    if (!p.relative) antecedent = nullptr;
    Span span(std::move(ranges));
    if (!seen.insert(span).second) continue;
    out.push_back(MakeUnit(parent, std::move(span)));
  }
  return out;
}

TopicUnits ExtractTopicUnits(const Topic& topic, Execution execution) {
  struct Job {
    const ParentText* parent;
    const Sentence* sentence;
  };
  std::vector<const ParentText*> texts;
  for (const auto* group : {&topic.documents(), &topic.summaries()}) {
    for (const ParentText& t : *group) texts.push_back(&t);
  }
  std::sort(texts.begin(), texts.end(),
            [](const ParentText* a, const ParentText* b) {
              return a->id() < b->id();
            });
  std::vector<Job> jobs;
  for (const ParentText* t : texts) {
    for (const Sentence& s : t->sentences()) jobs.push_back({t, &s});
  }
  std::vector<std::vector<InformationUnit>> results(jobs.size());
  const long n = static_cast<long>(jobs.size());
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      results[i] = ExtractUnits(*jobs[i].parent, *jobs[i].sentence);
    }
  } else {
    for (long i = 0; i < n; ++i) {
      results[i] = ExtractUnits(*jobs[i].parent, *jobs[i].sentence);
    }
  }
  TopicUnits out{topic.id(), {}};
  for (auto& r : results) {
    for (auto& u : r) out.units.push_back(std::move(u));
  }
  return out;
}

bool AnnotationsAgree(const std::vector<Span>& a, const std::vector<Span>& b,
                      double min_jaccard) {
  if (a.size() != b.size()) return false;
  std::vector<Span> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  for (size_t i = 0; i < sa.size(); ++i) {
    if (CharJaccard(sa[i], sb[i]) < min_jaccard) return false;
  }
  return true;
}

CanonicalChoice SelectCanonicalAnnotation(
    const std::vector<std::vector<Span>>& annotations, uint64_t seed) {
  if (annotations.empty()) {
    throw InvalidArgument("no annotations to select from");
  }
  // Groups of agreeing annotations, each keyed by its first member.
  std::vector<std::vector<size_t>> groups;
  for (size_t i = 0; i < annotations.size(); ++i) {
    bool placed = false;
    for (auto& g : groups) {
      if (AnnotationsAgree(annotations[g.front()], annotations[i])) {
        g.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({i});
  }
  std::vector<size_t> tied;
  const bool all_distinct = groups.size() == annotations.size();
  if (all_distinct) {
    size_t most = 0;
    for (const auto& a : annotations) most = std::max(most, a.size());
    for (size_t i = 0; i < annotations.size(); ++i) {
      if (annotations[i].size() == most) tied.push_back(i);
    }
  } else {
    size_t largest = 0;
    for (const auto& g : groups) largest = std::max(largest, g.size());
    for (const auto& g : groups) {
      if (g.size() == largest) tied.push_back(g.front());
    }
  }
  std::mt19937_64 rng(seed);
  const size_t pick = tied.size() == 1 ? tied.front() : tied[rng() % tied.size()];
  return {pick, annotations[pick]};
}

}  // namespace spanalign
