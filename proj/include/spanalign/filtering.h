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

#ifndef SPANALIGN_FILTERING_H_
#define SPANALIGN_FILTERING_H_

#include <optional>
#include <vector>

#include "spanalign/alignment.h"
#include "spanalign/corpus.h"
#include "spanalign/parallel.h"
#include "spanalign/scorer.h"

namespace spanalign {

// Scores of one (summary IU, document sentence) candidate. iu and sentence
// index the vectors the scores were computed from.
struct CandidateScore {
  size_t iu = 0;
  size_t sentence = 0;
  double rouge1_precision = 0.0;  // R
  double similarity = 0.0;        // B
  double entailment = 0.0;        // E

  double Product() const { return rouge1_precision * similarity * entailment; }
};

// ROUGE-1 precision of the IU against the sentence, stemmed.
double Rouge1Precision(const std::string& iu_text, const std::string& sentence);

// All |ius| x |sentences| candidates in row-major order (iu, then sentence).
// R is computed locally; B and E come from the scorer with the sentence as
// text_a and the IU as text_b.
std::vector<CandidateScore> ScoreCandidates(
    const std::vector<InformationUnit>& ius,
    const std::vector<Sentence>& sentences, PairScorer& scorer,
    Execution execution = Execution::kParallel);

// Keep a candidate when any score reaches its threshold. A threshold above 1
// disables that score.
struct FilterPolicy {
  double theta_r = 0.15;
  double theta_b = 0.85;
  double theta_e = 0.5;

  bool Keep(const CandidateScore& s) const {
    return s.rouge1_precision >= theta_r || s.similarity >= theta_b ||
           s.entailment >= theta_e;
  }
  friend bool operator==(const FilterPolicy&, const FilterPolicy&) = default;
};

struct FilterDiagnostics {
  size_t total = 0;
  size_t kept = 0;
  double reduction = 0.0;         // percent of candidates removed
  std::optional<double> recall;   // percent of gold pairs still reachable
  size_t gold_pairs = 0;
};

std::vector<CandidateScore> AutomaticFilter(
    const std::vector<CandidateScore>& scores, const FilterPolicy& policy);

// For each gold pair, the candidates that recover it: the summary IU has
// the gold summary parent and Jaccard >= threshold with the gold summary
// side, and the sentence lies in the gold document and overlaps the gold
// document side.
std::vector<std::vector<size_t>> GoldRecoverers(
    const std::vector<CandidateScore>& scores,
    const std::vector<InformationUnit>& ius,
    const std::vector<Sentence>& sentences, const AlignmentSet& gold,
    double threshold);

// Reduction and, when gold is given, recall of policy over scores.
FilterDiagnostics Diagnose(const std::vector<CandidateScore>& scores,
                           const std::vector<InformationUnit>& ius,
                           const std::vector<Sentence>& sentences,
                           const FilterPolicy& policy,
                           const AlignmentSet* gold, double threshold);

// Sentence indices of the k best candidates of one IU by R*B*E, ties broken
// by (document id, sentence index).
std::vector<size_t> TopCandidates(size_t iu,
                                  const std::vector<CandidateScore>& scores,
                                  const std::vector<Sentence>& sentences,
                                  size_t k = 10);

struct CalibrationResult {
  FilterPolicy policy;
  double reduction = 0.0;
  double recall = 0.0;
  bool feasible = false;  // some grid point reached the recall target
};

// Grid search over per-score thresholds: maximizes reduction subject to
// recall >= recall_target (percent); ties prefer higher recall, then the
// earliest grid point. When no point is feasible, returns the point with the
// highest recall. An empty grid means 0, 0.05, ..., 1 plus a disabling 1.01.
CalibrationResult Calibrate(const std::vector<CandidateScore>& scores,
                            const std::vector<InformationUnit>& ius,
                            const std::vector<Sentence>& sentences,
                            const AlignmentSet& gold, double recall_target,
                            double threshold, std::vector<double> grid = {},
                            Execution execution = Execution::kParallel);

}  // namespace spanalign

#endif  // SPANALIGN_FILTERING_H_
