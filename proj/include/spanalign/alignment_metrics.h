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

#ifndef SPANALIGN_ALIGNMENT_METRICS_H_
#define SPANALIGN_ALIGNMENT_METRICS_H_

#include <vector>

#include "spanalign/alignment.h"
#include "spanalign/parallel.h"

namespace spanalign {

inline constexpr double kDefaultThreshold = 0.25;

// Character-level intersection over union of two spans in one parent.
double CharJaccard(const Span& a, const Span& b);
// Throws InvalidArgument when the units have different parents.
double CharJaccard(const InformationUnit& a, const InformationUnit& b);

// (|r∩| + |d∩|) / (|r∪| + |d∪|) over the summary (r) and document (d)
// sides. Zero when either side's parents differ.
double JointJaccard(const AlignmentPair& p, const AlignmentPair& t);

// Percentages. A pair is matched when some pair on the other side clears
// the threshold on both its summary and document Jaccard.
struct MatchScores {
  double threshold = kDefaultThreshold;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  bool recall_undefined = false;     // no gold pairs
  bool precision_undefined = false;  // no predicted pairs
};

// Percentages; each side averages only its positive pair scores.
struct CoJacScores {
  double threshold = kDefaultThreshold;
  double cojac_t = 0.0;
  double cojac_p = 0.0;
  bool t_empty = false;  // no gold pair scored above zero
  bool p_empty = false;  // no predicted pair scored above zero
};

// Coverage is the percentage of distinct gold summary units that some
// predicted summary unit overlaps at Jaccard >= threshold. f1_cover is the
// harmonic mean of coverage and MatchScores::precision.
struct CoverageScores {
  double threshold = kDefaultThreshold;
  double coverage = 0.0;
  double f1_cover = 0.0;
  bool undefined = false;  // no gold pairs
};

// Per-topic counts that sum across topics. Micro-averaged corpus scores are
// computed from the summed tally.
struct MetricTally {
  long predicted = 0;
  long gold = 0;
  long matched_predicted = 0;
  long matched_gold = 0;
  double cojac_p_sum = 0.0;
  long cojac_p_count = 0;
  double cojac_t_sum = 0.0;
  long cojac_t_count = 0;
  long gold_summary_units = 0;
  long covered_summary_units = 0;

  MetricTally& operator+=(const MetricTally& other);
};

// Per-pair scores of one topic: matched flags and CoJac scores for each
// predicted and each gold pair, plus coverage flags per distinct gold
// summary unit.
struct PairwiseScores {
  std::vector<char> predicted_matched;
  std::vector<char> gold_matched;
  std::vector<double> predicted_cojac;
  std::vector<double> gold_cojac;
  std::vector<char> summary_unit_covered;
};

// The O(n*m) kernel. Both executions return identical results.
PairwiseScores ScorePairs(const AlignmentSet& predicted,
                          const AlignmentSet& gold, double threshold,
                          Execution execution = Execution::kParallel);

MetricTally Tally(const PairwiseScores& scores);
MetricTally TallyTopic(const AlignmentSet& predicted, const AlignmentSet& gold,
                       double threshold,
                       Execution execution = Execution::kParallel);

MatchScores MatchFromTally(const MetricTally& tally, double threshold);
CoJacScores CoJacFromTally(const MetricTally& tally, double threshold);
CoverageScores CoverageFromTally(const MetricTally& tally, double threshold);

// Throws InvalidArgument unless 0 < threshold <= 1.
MatchScores ExtendedRecallPrecision(const AlignmentSet& predicted,
                                    const AlignmentSet& gold,
                                    double threshold = kDefaultThreshold);
CoJacScores CoJac(const AlignmentSet& predicted, const AlignmentSet& gold,
                  double threshold = kDefaultThreshold);
CoverageScores Coverage(const AlignmentSet& predicted, const AlignmentSet& gold,
                        double threshold = kDefaultThreshold);

struct EvaluationReport {
  MatchScores match;
  CoverageScores coverage;
  CoJacScores cojac;
  MetricTally tally;
};

// Evaluates predicted sets against gold sets, pairing them by topic id.
// Topics missing on one side contribute unmatched pairs to the other.
EvaluationReport Evaluate(const std::vector<AlignmentSet>& predicted,
                          const std::vector<AlignmentSet>& gold,
                          double threshold = kDefaultThreshold,
                          Execution execution = Execution::kParallel);

}  // namespace spanalign

#endif  // SPANALIGN_ALIGNMENT_METRICS_H_
