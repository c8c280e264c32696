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

#ifndef SPANALIGN_TESTS_TESTING_ALIGNER_ORACLES_H_
#define SPANALIGN_TESTS_TESTING_ALIGNER_ORACLES_H_

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spanalign/aligners.h"
#include "spanalign/alignment.h"
#include "spanalign/corpus.h"
#include "spanalign/iu_extraction.h"
#include "spanalign/tokenizer.h"
#include "testing/naive_rouge.h"

namespace spanalign::testing {

// Random word-window units, two per sentence.
inline std::vector<InformationUnit> WindowUnits(std::mt19937_64& rng,
                                                const ParentText& t) {
  std::vector<InformationUnit> out;
  for (const Sentence& s : t.sentences()) {
    const auto tokens = UnitTokens(t, Span{s.range()});
    for (int k = 0; k < 2; ++k) {
      const size_t a = rng() % tokens.size();
      const size_t b = a + rng() % (tokens.size() - a);
      out.push_back(MakeUnit(t, Span{{tokens[a].start, tokens[b].end}}));
    }
  }
  return out;
}

struct RankedPair {
  Span summary_span;
  std::string doc_parent;
  Span doc_span;
  bool operator==(const RankedPair&) const = default;
};

// Top-k doc units per summary unit by mean ROUGE F1, ties by (doc id, span).
inline std::vector<RankedPair> NaiveRougeIu(
    const std::vector<InformationUnit>& summary_ius,
    const std::vector<InformationUnit>& doc_ius, int k) {
  std::vector<RankedPair> out;
  std::set<std::tuple<std::string, Span, std::string, Span>> seen;
  for (const auto& s : summary_ius) {
    const auto st = RougeTokens(s.surface, true);
    std::vector<std::tuple<double, std::string, Span>> ranked;
    for (const auto& d : doc_ius) {
      ranked.emplace_back(-NaiveMeanF1(st, RougeTokens(d.surface, true)),
                          d.parent_id, d.span);
    }
    std::sort(ranked.begin(), ranked.end());
    for (size_t r = 0; r < ranked.size() && r < static_cast<size_t>(k); ++r) {
      const auto& [score, id, span] = ranked[r];
      if (seen.insert({s.parent_id, s.span, id, span}).second) {
        out.push_back({s.span, id, span});
      }
    }
  }
  return out;
}

struct RougeSentOracle {
  std::vector<std::pair<std::string, std::string>> pairs;  // surfaces
  std::set<std::pair<std::string, int>> salient;
  bool has_duplicates = false;
};

inline RougeSentOracle NaiveRougeSent(const Topic& topic, int max_per) {
  RougeSentOracle o;
  const auto sentences = topic.DocumentSentences();
  std::set<std::pair<std::string, std::string>> seen;
  for (const Sentence& ss : topic.summaries()[0].sentences()) {
    const auto st = RougeTokens(ss.text, true);
    std::vector<std::tuple<double, std::string, int>> ranked;
    for (const Sentence& d : sentences) {
      const double v = NaiveMeanF1(st, RougeTokens(d.text, true));
      if (v > 0) ranked.emplace_back(-v, d.parent_id, d.index);
    }
    std::sort(ranked.begin(), ranked.end());
    for (size_t i = 0; i < ranked.size() && i < static_cast<size_t>(max_per);
         ++i) {
      const auto& [v, id, index] = ranked[i];
      const auto pair = std::make_pair(
          ss.text, topic.FindDocument(id)->sentences()[index].text);
      if (!seen.insert(pair).second) o.has_duplicates = true;
      o.pairs.push_back(pair);
      o.salient.insert({id, index});
    }
  }
  return o;
}

// Rank sentences by length-weighted probability (ties by doc id, index), take
// the shortest prefix with complete coverage, and keep the members that add
// coverage over the earlier ones.
inline std::vector<std::pair<std::string, int>> PrefixOracle(
    const AlignmentSet& set, const Topic& topic) {
  using Key = std::pair<std::string, int>;
  using Unit = std::pair<std::string, Span>;
  std::map<Key, std::pair<double, double>> sums;
  std::map<Key, std::set<Unit>> covers;
  std::set<Unit> all;
  for (const auto& p : set.pairs()) {
    const ParentText* doc = topic.FindDocument(p.doc_iu.parent_id);
    const int s = doc->SentenceIndexAt(p.doc_iu.span.ranges().front().start);
    const Key key{doc->id(), s};
    sums[key].first += *p.probability * p.doc_iu.span.length();
    sums[key].second += p.doc_iu.span.length();
    covers[key].insert({p.summary_iu.parent_id, p.summary_iu.span});
    all.insert({p.summary_iu.parent_id, p.summary_iu.span});
  }
  std::vector<std::tuple<double, std::string, int>> ranked;
  for (const auto& [key, v] : sums) {
    ranked.emplace_back(-(v.first / v.second), key.first, key.second);
  }
  std::sort(ranked.begin(), ranked.end());
  auto cover_of = [&](size_t i) -> const std::set<Unit>& {
    return covers[{std::get<1>(ranked[i]), std::get<2>(ranked[i])}];
  };
  size_t prefix = 0;
  for (size_t len = 0; len <= ranked.size(); ++len) {
    std::set<Unit> u;
    for (size_t i = 0; i < len; ++i) u.insert(cover_of(i).begin(), cover_of(i).end());
    if (u == all) {
      prefix = len;
      break;
    }
  }
  std::vector<Key> out;
  for (size_t i = 0; i < prefix; ++i) {
    std::set<Unit> before;
    for (size_t j = 0; j < i; ++j) before.insert(cover_of(j).begin(), cover_of(j).end());
    const auto& mine = cover_of(i);
    if (std::any_of(mine.begin(), mine.end(),
                    [&](const Unit& u) { return !before.count(u); })) {
      out.emplace_back(std::get<1>(ranked[i]), std::get<2>(ranked[i]));
    }
  }
  return out;
}

// Independent checks on a salient selection: full coverage, and every
// selected sentence covers a unit that no earlier selected sentence covers.
inline bool CoversAllWithoutRedundancy(
    const AlignmentSet& set, const Topic& topic,
    const std::vector<Sentence>& selected) {
  using Unit = std::pair<std::string, Span>;
  std::map<std::pair<std::string, int>, std::set<Unit>> covers;
  std::set<Unit> all;
  for (const auto& p : set.pairs()) {
    const ParentText* doc = topic.FindDocument(p.doc_iu.parent_id);
    const int s = doc->SentenceIndexAt(p.doc_iu.span.ranges().front().start);
    covers[{doc->id(), s}].insert({p.summary_iu.parent_id, p.summary_iu.span});
    all.insert({p.summary_iu.parent_id, p.summary_iu.span});
  }
  std::set<Unit> got;
  for (const Sentence& s : selected) {
    bool adds = false;
    for (const Unit& u : covers[{s.parent_id, s.index}]) {
      adds = got.insert(u).second || adds;
    }
    if (!adds) return false;
  }
  return got == all;
}

inline std::vector<Sentence> PlainSentences(
    const std::vector<std::string>& texts) {
  std::vector<Sentence> out;
  for (size_t i = 0; i < texts.size(); ++i) {
    out.push_back({"d", static_cast<int>(i), 0, 1, texts[i]});
  }
  return out;
}

// R1 F1 + R2 F1 of the concatenated subset.
inline double NaiveCollective(const std::vector<Sentence>& sentences,
                              unsigned mask,
                              const std::vector<std::string>& summary) {
  std::vector<std::string> tokens;
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (mask & (1u << i)) {
      for (auto& t : RougeTokens(sentences[i].text, true)) tokens.push_back(t);
    }
  }
  return NaiveRougeNF1(tokens, summary, 1) + NaiveRougeNF1(tokens, summary, 2);
}

// Smallest mask (in enumeration order) with the strictly best score.
inline std::pair<unsigned, double> ExhaustiveBest(
    const std::vector<Sentence>& sentences,
    const std::vector<std::string>& summary) {
  double best = 0;
  unsigned best_mask = 0;
  for (unsigned mask = 1; mask < (1u << sentences.size()); ++mask) {
    const double v = NaiveCollective(sentences, mask, summary);
    if (v > best + 1e-12) {
      best = v;
      best_mask = mask;
    }
  }
  return {best_mask, best};
}

// Sentences drawn either from the summary vocabulary (and copied into the
// summary) or from a disjoint distractor vocabulary.
inline std::pair<std::vector<std::string>, std::string> ExtractiveTopic(
    std::mt19937_64& rng, size_t n) {
  std::vector<std::string> texts;
  std::string summary;
  for (size_t i = 0; i < n; ++i) {
    const bool in_summary = rng() % 2 == 0;
    std::string s;
    const int words = 3 + static_cast<int>(rng() % 6);
    for (int w = 0; w < words; ++w) {
      s += (w ? " " : "") + std::string(in_summary ? "w" : "x") +
           std::to_string(rng() % 40);
    }
    texts.push_back(s);
    if (in_summary) summary += s + " ";
  }
  return {texts, summary};
}

}  // namespace spanalign::testing

#endif  // SPANALIGN_TESTS_TESTING_ALIGNER_ORACLES_H_
