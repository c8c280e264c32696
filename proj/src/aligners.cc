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

#include "spanalign/aligners.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "spanalign/errors.h"

namespace spanalign {
namespace {

constexpr RougeMeasure kAllMeasures[] = {
    RougeMeasure::kMeanF1, RougeMeasure::kRouge1F1, RougeMeasure::kRouge2F1,
    RougeMeasure::kRougeLF1};

const ParentText& RequireDocument(const Topic& topic, const std::string& id) {
  const ParentText* p = topic.FindDocument(id);
  if (p == nullptr) {
    throw IntegrityError("topic " + topic.id() + ": unknown document " + id);
  }
  return *p;
}

const ParentText& RequireSummary(const Topic& topic, const std::string& id) {
  const ParentText* p = topic.FindSummary(id);
  if (p == nullptr) {
    throw IntegrityError("topic " + topic.id() + ": unknown summary " + id);
  }
  return *p;
}

// Sentence holding the first character of span, or else the first sentence
// it overlaps.
int SentenceOf(const ParentText& parent, const Span& span) {
  if (span.empty()) return -1;
  const int at = parent.SentenceIndexAt(span.ranges().front().start);
  if (at >= 0) return at;
  for (const Sentence& s : parent.sentences()) {
    if (IntersectionLength(span, Span{s.range()}) > 0) return s.index;
  }
  return -1;
}

bool SentenceOrder(const Sentence& a, const Sentence& b) {
  return std::tie(a.parent_id, a.index) < std::tie(b.parent_id, b.index);
}

}  // namespace

std::string_view RougeMeasureName(RougeMeasure measure) {
  switch (measure) {
    case RougeMeasure::kMeanF1:
      return "mean-f1";
    case RougeMeasure::kRouge1F1:
      return "rouge1-f1";
    case RougeMeasure::kRouge2F1:
      return "rouge2-f1";
    case RougeMeasure::kRougeLF1:
      return "rougeL-f1";
  }
  return "";
}

RougeMeasure ParseRougeMeasure(std::string_view name) {
  for (RougeMeasure m : kAllMeasures) {
    if (RougeMeasureName(m) == name) return m;
  }
  throw InvalidArgument("unknown ROUGE measure: " + std::string(name));
}

double RougeMeasureScore(const RougeProfile& candidate,
                         const RougeProfile& reference, RougeMeasure measure) {
  switch (measure) {
    case RougeMeasure::kMeanF1:
      return MeanRougeF1(candidate, reference);
    case RougeMeasure::kRouge1F1:
      return Rouge(candidate, reference, RougeVariant::kRouge1).f1;
    case RougeMeasure::kRouge2F1:
      return Rouge(candidate, reference, RougeVariant::kRouge2).f1;
    case RougeMeasure::kRougeLF1:
      return Rouge(candidate, reference, RougeVariant::kRougeL).f1;
  }
  return 0.0;
}

AlignmentSet AlignRougeIu(const std::string& topic_id,
                          const std::vector<InformationUnit>& summary_ius,
                          const std::vector<InformationUnit>& doc_ius, int k,
                          RougeMeasure measure, Execution execution) {
  if (k < 1) throw InvalidArgument("rouge_iu: k must be at least 1");
  const size_t n = summary_ius.size(), m = doc_ius.size();
  std::vector<RougeProfile> doc_profiles(m);
  for (size_t j = 0; j < m; ++j) {
    doc_profiles[j] = RougeProfile::FromText(doc_ius[j].surface, true);
  }
  // Tie order over document IUs, shared by every row.
  std::vector<size_t> order(m);
  for (size_t j = 0; j < m; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& x = doc_ius[a];
    const auto& y = doc_ius[b];
    return std::tie(x.parent_id, x.sentence_index, x.span) <
           std::tie(y.parent_id, y.sentence_index, y.span);
  });
  std::vector<size_t> rank(m);
  for (size_t r = 0; r < m; ++r) rank[order[r]] = r;

  const size_t take = std::min(static_cast<size_t>(k), m);
  std::vector<std::vector<size_t>> chosen(n);
  auto row = [&](long i) {
    const RougeProfile p = RougeProfile::FromText(summary_ius[i].surface, true);
    std::vector<std::pair<double, size_t>> scored(m);
    for (size_t j = 0; j < m; ++j) {
      scored[j] = {RougeMeasureScore(p, doc_profiles[j], measure), j};
    }
    std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                      [&](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return rank[a.second] < rank[b.second];
                      });
    for (size_t r = 0; r < take; ++r) chosen[i].push_back(scored[r].second);
  };
  const long rows = static_cast<long>(n);
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < rows; ++i) row(i);
  } else {
    for (long i = 0; i < rows; ++i) row(i);
  }
  AlignmentSet out(topic_id);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j : chosen[i]) {
      out.Add({summary_ius[i], doc_ius[j], std::nullopt, Provenance::kRougeIu});
    }
  }
  return out;
}

std::vector<std::pair<size_t, size_t>> AlignWords(
    const std::vector<Token>& iu_tokens,
    const std::vector<Token>& sentence_tokens) {
  std::vector<char> used(sentence_tokens.size(), 0);
  std::vector<std::string> sentence_stems(sentence_tokens.size());
  for (size_t j = 0; j < sentence_tokens.size(); ++j) {
    sentence_stems[j] = PorterStem(sentence_tokens[j].lower);
  }
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < iu_tokens.size(); ++i) {
    const Token& t = iu_tokens[i];
    if (!t.is_word) continue;
    const std::string stem = PorterStem(t.lower);
    auto find = [&](auto match) -> long {
      for (size_t j = 0; j < sentence_tokens.size(); ++j) {
        if (!used[j] && sentence_tokens[j].is_word && match(j)) {
          return static_cast<long>(j);
        }
      }
      return -1;
    };
    long j = find([&](size_t s) { return sentence_tokens[s].raw == t.raw; });
    if (j < 0) {
      j = find([&](size_t s) { return sentence_tokens[s].lower == t.lower; });
    }
    if (j < 0) j = find([&](size_t s) { return sentence_stems[s] == stem; });
    if (j < 0) continue;
    used[j] = 1;
    out.emplace_back(i, static_cast<size_t>(j));
  }
  return out;
}

std::vector<Token> UnitTokens(const ParentText& parent, const Span& span) {
  std::vector<Token> out;
  for (const CharRange& r : span.ranges()) {
    if (r.end > parent.size()) {
      throw IntegrityError("span out of bounds of " + parent.id());
    }
    for (Token& t : Tokenize(parent.code_points().substr(r.start, r.length()),
                             r.start)) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::optional<PhraseAlignment> AlignPhrase(const ParentText& summary,
                                           const InformationUnit& iu,
                                           const ParentText& document,
                                           const Sentence& sentence) {
  const std::vector<Token> iu_tokens = UnitTokens(summary, iu.span);
  const std::vector<Token> sentence_tokens = UnitTokens(document, Span{sentence.range()});
  const auto matches = AlignWords(iu_tokens, sentence_tokens);
  if (matches.empty()) return std::nullopt;
  const size_t iu_first = matches.front().first, iu_last = matches.back().first;
  size_t doc_first = matches.front().second, doc_last = doc_first;
  for (const auto& [i, j] : matches) {
    doc_first = std::min(doc_first, j);
    doc_last = std::max(doc_last, j);
  }
  PhraseAlignment out;
  out.iu_span = Intersect(
      iu.span, Span{{iu_tokens[iu_first].start, iu_tokens[iu_last].end}});
  out.doc_span = Span{
      {sentence_tokens[doc_first].start, sentence_tokens[doc_last].end}};
  out.iu_tokens = iu_tokens.size();
  out.iu_phrase_tokens = iu_last - iu_first + 1;
  out.doc_phrase_tokens = doc_last - doc_first + 1;
  out.accepted = 10 * out.iu_phrase_tokens >= 3 * out.iu_tokens &&
                 10 * out.doc_phrase_tokens >= 3 * out.iu_tokens;
  return out;
}

AlignmentSet AlignSimEnsemble(const Topic& topic,
                              const std::vector<InformationUnit>& summary_ius,
                              PairScorer& scorer,
                              const SimEnsembleOptions& options) {
  const std::vector<Sentence> sentences = topic.DocumentSentences();
  std::vector<CandidateScore> scores =
      ScoreCandidates(summary_ius, sentences, scorer, Execution::kSerial);
  if (options.apply_filter) scores = AutomaticFilter(scores, options.policy);
  AlignmentSet out(topic.id());
  for (size_t i = 0; i < summary_ius.size(); ++i) {
    const InformationUnit& iu = summary_ius[i];
    const ParentText& summary = RequireSummary(topic, iu.parent_id);
    for (size_t s : TopCandidates(i, scores, sentences, options.top_k)) {
      const Sentence& sentence = sentences[s];
      const ParentText& document = RequireDocument(topic, sentence.parent_id);
      const auto phrase = AlignPhrase(summary, iu, document, sentence);
      if (!phrase || !phrase->accepted) continue;
      out.Add({MakeUnit(summary, phrase->iu_span),
               MakeUnit(document, phrase->doc_span), std::nullopt,
               Provenance::kSimEnsemble});
    }
  }
  return out;
}

std::vector<CandidatePair> SupervisedCandidates(
    const Topic& topic, const std::vector<InformationUnit>& summary_ius,
    const std::vector<InformationUnit>& doc_ius, PairScorer& scorer,
    const FilterPolicy& policy) {
  const std::vector<Sentence> sentences = topic.DocumentSentences();
  const auto kept = AutomaticFilter(
      ScoreCandidates(summary_ius, sentences, scorer, Execution::kSerial),
      policy);
  std::vector<std::set<std::pair<std::string, int>>> open(summary_ius.size());
  for (const CandidateScore& c : kept) {
    open[c.iu].insert(
        {sentences[c.sentence].parent_id, sentences[c.sentence].index});
  }
  std::vector<std::pair<std::string, int>> doc_sentence(doc_ius.size());
  for (size_t j = 0; j < doc_ius.size(); ++j) {
    const ParentText& doc = RequireDocument(topic, doc_ius[j].parent_id);
    doc_sentence[j] = {doc.id(), SentenceOf(doc, doc_ius[j].span)};
  }
  std::vector<CandidatePair> out;
  for (size_t i = 0; i < summary_ius.size(); ++i) {
    for (size_t j = 0; j < doc_ius.size(); ++j) {
      if (open[i].count(doc_sentence[j])) out.push_back({summary_ius[i], doc_ius[j]});
    }
  }
  return out;
}

AlignmentSet AlignSupervised(const std::string& topic_id,
                             const std::vector<CandidatePair>& candidates,
                             PairScorer& scorer, double threshold) {
  if (!(threshold >= 0.0)) {
    throw InvalidArgument("supervised threshold must be non-negative");
  }
  std::map<TextPair, size_t> unique;
  std::vector<TextPair> requests;
  std::vector<size_t> request_of;
  for (const CandidatePair& c : candidates) {
    TextPair p{c.doc_iu.surface, c.summary_iu.surface};
    auto [it, inserted] = unique.emplace(p, requests.size());
    if (inserted) requests.push_back(std::move(p));
    request_of.push_back(it->second);
  }
  AlignmentSet out(topic_id);
  if (requests.empty()) return out;
  const std::vector<ScoreKind> kinds = {ScoreKind::kAlignProb};
  const auto replies = scorer.Score(requests, kinds);
  if (replies.size() != requests.size()) {
    throw ScorerError("scorer returned " + std::to_string(replies.size()) +
                      " results for " + std::to_string(requests.size()) +
                      " pairs");
  }
  for (const PairScores& r : replies) ValidateScores(r, kinds, "scorer");
  for (size_t c = 0; c < candidates.size(); ++c) {
    const double p = *replies[request_of[c]].align_prob;
    if (p < threshold) continue;
    out.Add({candidates[c].summary_iu, candidates[c].doc_iu, p,
             Provenance::kSupervised});
  }
  return out;
}

std::vector<std::pair<Sentence, double>> SentenceAlignmentScores(
    const AlignmentSet& alignments, const Topic& topic, LengthWeight weight) {
  struct Acc {
    double weighted = 0.0;
    double total = 0.0;
    double probability_sum = 0.0;
    size_t count = 0;
  };
  std::map<std::pair<std::string, int>, Acc> acc;
  for (const AlignmentPair& p : alignments.pairs()) {
    if (!p.probability) {
      throw InvalidArgument("sentence selection needs a probability on every "
                            "pair");
    }
    const ParentText& doc = RequireDocument(topic, p.doc_iu.parent_id);
    const int s = SentenceOf(doc, p.doc_iu.span);
    if (s < 0) {
      throw IntegrityError("document unit outside every sentence of " +
                           doc.id());
    }
    const double len =
        weight == LengthWeight::kCharacters
            ? static_cast<double>(p.doc_iu.span.length())
            : static_cast<double>(UnitTokens(doc, p.doc_iu.span).size());
    Acc& a = acc[{doc.id(), s}];
    a.weighted += *p.probability * len;
    a.total += len;
    a.probability_sum += *p.probability;
    ++a.count;
  }
  std::vector<std::pair<Sentence, double>> out;
  for (const auto& [key, a] : acc) {
    const ParentText& doc = RequireDocument(topic, key.first);
    const double score = a.total > 0 ? a.weighted / a.total
                                     : a.probability_sum / static_cast<double>(a.count);
    out.emplace_back(doc.sentences()[key.second], score);
  }
  return out;
}

std::vector<Sentence> SelectSalientSentences(const AlignmentSet& alignments,
                                             const Topic& topic,
                                             LengthWeight weight) {
  auto scored = SentenceAlignmentScores(alignments, topic, weight);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return SentenceOrder(a.first, b.first);
  });
  using UnitKey = std::pair<std::string, Span>;
  std::map<std::pair<std::string, int>, std::set<UnitKey>> covers;
  std::set<UnitKey> needed;
  for (const AlignmentPair& p : alignments.pairs()) {
    const ParentText& doc = RequireDocument(topic, p.doc_iu.parent_id);
    const UnitKey u{p.summary_iu.parent_id, p.summary_iu.span};
    covers[{doc.id(), SentenceOf(doc, p.doc_iu.span)}].insert(u);
    needed.insert(u);
  }
  std::set<UnitKey> covered;
  std::vector<Sentence> out;
  for (const auto& [sentence, score] : scored) {
    if (covered.size() == needed.size()) break;
    const auto& units = covers[{sentence.parent_id, sentence.index}];
    bool adds = false;
    for (const UnitKey& u : units) adds = adds || !covered.count(u);
    if (!adds) continue;
    covered.insert(units.begin(), units.end());
    out.push_back(sentence);
  }
  return out;
}

double CollectiveRouge(const std::vector<std::vector<std::string>>& sentences,
                       const std::vector<size_t>& chosen,
                       const RougeProfile& summary) {
  std::vector<size_t> in_order = chosen;
  std::sort(in_order.begin(), in_order.end());
  std::vector<std::string> tokens;
  for (size_t i : in_order) {
    tokens.insert(tokens.end(), sentences[i].begin(), sentences[i].end());
  }
  const RougeProfile candidate(std::move(tokens));
  return Rouge(candidate, summary, RougeVariant::kRouge1).f1 +
         Rouge(candidate, summary, RougeVariant::kRouge2).f1;
}

std::vector<size_t> AlignRougeFull(const std::vector<Sentence>& sentences,
                                   const std::string& summary_text) {
  const RougeProfile summary = RougeProfile::FromText(summary_text, true);
  std::vector<std::vector<std::string>> tokens;
  for (const Sentence& s : sentences) tokens.push_back(RougeTokens(s.text, true));
  std::vector<size_t> chosen;
  std::vector<char> taken(sentences.size(), 0);
  double best = 0.0;
  while (true) {
    long pick = -1;
    double pick_score = best;
    for (size_t j = 0; j < sentences.size(); ++j) {
      if (taken[j]) continue;
      std::vector<size_t> trial = chosen;
      trial.push_back(j);
      const double score = CollectiveRouge(tokens, trial, summary);
      if (score > pick_score) {
        pick_score = score;
        pick = static_cast<long>(j);
      }
    }
    if (pick < 0) break;
    taken[pick] = 1;
    chosen.push_back(static_cast<size_t>(pick));
    best = pick_score;
  }
  return chosen;
}

AlignmentSet RougeFullAlignment(const Topic& topic) {
  const std::vector<Sentence> sentences = topic.DocumentSentences();
  AlignmentSet out(topic.id());
  for (const ParentText& summary : topic.summaries()) {
    if (summary.sentences().empty()) continue;
    const InformationUnit whole = MakeUnit(
        summary, Span{{summary.sentences().front().offset,
                       summary.sentences().back().range().end}});
    for (size_t j : AlignRougeFull(sentences, summary.text())) {
      const ParentText& doc = RequireDocument(topic, sentences[j].parent_id);
      out.Add({whole, SentenceUnit(doc, sentences[j]), std::nullopt,
               Provenance::kRougeFull});
    }
  }
  return out;
}

RougeSentResult AlignRougeSent(const Topic& topic, int max_per,
                               RougeMeasure measure) {
  if (max_per < 1) throw InvalidArgument("rouge_sent: max_per must be >= 1");
  const std::vector<Sentence> sentences = topic.DocumentSentences();
  std::vector<RougeProfile> profiles;
  for (const Sentence& s : sentences) {
    profiles.push_back(RougeProfile::FromText(s.text, true));
  }
  RougeSentResult out{AlignmentSet(topic.id()), {}};
  std::vector<char> salient(sentences.size(), 0);
  for (const ParentText& summary : topic.summaries()) {
    for (const Sentence& ss : summary.sentences()) {
      const RougeProfile p = RougeProfile::FromText(ss.text, true);
      std::vector<std::pair<double, size_t>> scored;
      for (size_t j = 0; j < sentences.size(); ++j) {
        const double score = RougeMeasureScore(p, profiles[j], measure);
        if (score > 0.0) scored.emplace_back(score, j);
      }
      std::stable_sort(scored.begin(), scored.end(),
                       [&](const auto& a, const auto& b) {
                         if (a.first != b.first) return a.first > b.first;
                         return SentenceOrder(sentences[a.second],
                                              sentences[b.second]);
                       });
      for (size_t r = 0; r < scored.size() && r < static_cast<size_t>(max_per);
           ++r) {
        const Sentence& d = sentences[scored[r].second];
        out.alignments.Add({SentenceUnit(summary, ss),
                            SentenceUnit(RequireDocument(topic, d.parent_id), d),
                            std::nullopt, Provenance::kRougeSent});
        salient[scored[r].second] = 1;
      }
    }
  }
  for (size_t j = 0; j < sentences.size(); ++j) {
    if (salient[j]) out.salient.push_back(sentences[j]);
  }
  return out;
}

}  // namespace spanalign
