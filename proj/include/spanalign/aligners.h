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

#ifndef SPANALIGN_ALIGNERS_H_
#define SPANALIGN_ALIGNERS_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spanalign/alignment.h"
#include "spanalign/corpus.h"
#include "spanalign/filtering.h"
#include "spanalign/parallel.h"
#include "spanalign/rouge.h"
#include "spanalign/scorer.h"
#include "spanalign/tokenizer.h"

namespace spanalign {

// Pair score used by the ROUGE-based aligners. All variants are computed on
// lowercased, Porter-stemmed tokens.
enum class RougeMeasure { kMeanF1, kRouge1F1, kRouge2F1, kRougeLF1 };

std::string_view RougeMeasureName(RougeMeasure measure);
RougeMeasure ParseRougeMeasure(std::string_view name);
double RougeMeasureScore(const RougeProfile& candidate,
                         const RougeProfile& reference, RougeMeasure measure);

// Each summary IU is paired with its k best document IUs by measure, ties
// broken by (document id, sentence index, span). Throws InvalidArgument
// unless k >= 1.
AlignmentSet AlignRougeIu(const std::string& topic_id,
                          const std::vector<InformationUnit>& summary_ius,
                          const std::vector<InformationUnit>& doc_ius,
                          int k = 2, RougeMeasure measure = RougeMeasure::kMeanF1,
                          Execution execution = Execution::kParallel);

// Lexical word alignment: each IU token, left to right, takes the leftmost
// unused sentence token that matches exactly, else case-insensitively, else
// by Porter stem. Returns (iu token, sentence token) index pairs in IU token
// order.
std::vector<std::pair<size_t, size_t>> AlignWords(
    const std::vector<Token>& iu_tokens,
    const std::vector<Token>& sentence_tokens);

// Word tokens of a unit, offsets relative to the parent text.
std::vector<Token> UnitTokens(const ParentText& parent, const Span& span);

struct PhraseAlignment {
  Span iu_span;   // unit span clipped to [first, last] matched IU word
  Span doc_span;  // [first, last] matched sentence word
  size_t iu_tokens = 0;      // word tokens in the whole unit
  size_t iu_phrase_tokens = 0;
  size_t doc_phrase_tokens = 0;
  bool accepted = false;
};

// Stage 3 and 4 of the ensemble aligner for one (IU, sentence) candidate:
// word alignment, gap closing on both sides, then acceptance when both
// phrases hold at least 30% as many word tokens as the IU. Returns nothing
// when no word aligns.
std::optional<PhraseAlignment> AlignPhrase(const ParentText& summary,
                                           const InformationUnit& iu,
                                           const ParentText& document,
                                           const Sentence& sentence);

struct SimEnsembleOptions {
  size_t top_k = 10;
  FilterPolicy policy;
  bool apply_filter = true;  // restrict stage 2 to candidates the policy keeps
};

// Ensemble aligner: candidate sentences are scored (R from ROUGE-1
// precision, B and E from the scorer), the top_k by R*B*E per summary IU
// go through AlignPhrase, and accepted phrases become pairs.
AlignmentSet AlignSimEnsemble(const Topic& topic,
                              const std::vector<InformationUnit>& summary_ius,
                              PairScorer& scorer,
                              const SimEnsembleOptions& options = {});

struct CandidatePair {
  InformationUnit summary_iu;
  InformationUnit doc_iu;
};

// Summary IU x document IU candidates whose document sentence survives the
// filter policy for that summary IU.
std::vector<CandidatePair> SupervisedCandidates(
    const Topic& topic, const std::vector<InformationUnit>& summary_ius,
    const std::vector<InformationUnit>& doc_ius, PairScorer& scorer,
    const FilterPolicy& policy = {});

// Pairs whose align_prob (doc IU as text_a, summary IU as text_b) reaches
// threshold; the probability is kept on each pair.
AlignmentSet AlignSupervised(const std::string& topic_id,
                             const std::vector<CandidatePair>& candidates,
                             PairScorer& scorer, double threshold = 0.5);

enum class LengthWeight { kCharacters, kTokens };

// Greedy salient-sentence selection from probability-annotated pairs. A
// sentence scores the length-weighted mean probability of the pairs whose
// document IU starts in it; sentences are visited by descending score (ties
// by document id, index), skipped when they cover no new summary IU, until
// every aligned summary IU is covered. Returns sentences in selection
// order. Throws InvalidArgument when a pair lacks a probability.
std::vector<Sentence> SelectSalientSentences(
    const AlignmentSet& alignments, const Topic& topic,
    LengthWeight weight = LengthWeight::kCharacters);

// Sentence score used by SelectSalientSentences, keyed by (doc id, index).
std::vector<std::pair<Sentence, double>> SentenceAlignmentScores(
    const AlignmentSet& alignments, const Topic& topic,
    LengthWeight weight = LengthWeight::kCharacters);

// ROUGE-1 F1 + ROUGE-2 F1 of the concatenated sentences (in input order)
// against the summary tokens.
double CollectiveRouge(const std::vector<std::vector<std::string>>& sentences,
                       const std::vector<size_t>& chosen,
                       const RougeProfile& summary);

// Greedy extractive oracle: repeatedly adds the sentence that most
// increases CollectiveRouge of the selection (kept in input order) and stops
// when no sentence strictly improves it. Returns indices into sentences in
// selection order.
std::vector<size_t> AlignRougeFull(const std::vector<Sentence>& sentences,
                                   const std::string& summary_text);

// Summary-level pairs (whole summary, each selected sentence).
AlignmentSet RougeFullAlignment(const Topic& topic);

struct RougeSentResult {
  AlignmentSet alignments;        // sentence-granularity pairs
  std::vector<Sentence> salient;  // union, document order
};

// Each summary sentence is paired with its max_per best document sentences
// by measure (positive scores only), ties by (document id, index).
RougeSentResult AlignRougeSent(const Topic& topic, int max_per = 2,
                               RougeMeasure measure = RougeMeasure::kMeanF1);

}  // namespace spanalign

#endif  // SPANALIGN_ALIGNERS_H_
