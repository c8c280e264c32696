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

#ifndef SPANALIGN_DERIVE_H_
#define SPANALIGN_DERIVE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "spanalign/alignment.h"
#include "spanalign/corpus.h"
#include "spanalign/parallel.h"
#include "spanalign/scorer.h"

namespace spanalign {

// Distinct document units of a set, sorted by (parent id, span).
std::vector<InformationUnit> DeriveSalience(const AlignmentSet& set);

struct Cluster {
  std::string cluster_id;
  std::string topic_id;
  InformationUnit summary_iu;                // pivot
  std::vector<InformationUnit> members;      // sorted, distinct
};

// One cluster per distinct summary unit, sorted by (summary id, span).
// Cluster ids are "<topic>/c<k>".
std::vector<Cluster> DeriveClusters(const AlignmentSet& set);

struct SentencePlan {
  std::string topic_id;
  std::string summary_id;
  int sentence_index = 0;
  std::string target;  // summary sentence text
  std::vector<Cluster> clusters;
};

// Groups clusters by the summary sentence holding the first character of
// their pivot. Plans are sorted by (summary id, sentence index). Throws
// IntegrityError when a pivot's summary or sentence cannot be found.
std::vector<SentencePlan> DeriveSentencePlans(
    const std::vector<Cluster>& clusters, const Topic& topic);

struct FusionRecord {
  std::string topic_id;
  std::string summary_id;
  int sentence_index = 0;
  std::vector<std::vector<std::string>> inputs;  // member surfaces per cluster
  std::string target;
};

std::vector<FusionRecord> DeriveFusion(const std::vector<SentencePlan>& plans);

struct OrderingRecord {
  std::string topic_id;
  std::string summary_id;
  std::vector<SentencePlan> items;  // shuffled
  // gold_permutation[k] is the position in items of the k-th plan in
  // summary order.
  std::vector<int> gold_permutation;
};

// One record per (topic, summary) in order of first appearance. Group g is
// shuffled by Fisher-Yates on mt19937_64 seeded with {seed, g}.
std::vector<OrderingRecord> DeriveOrdering(
    const std::vector<SentencePlan>& plans, uint64_t seed);

std::vector<SentencePlan> Unshuffle(const OrderingRecord& record);

struct TopicDerivation {
  std::string topic_id;
  size_t alignments = 0;
  std::vector<InformationUnit> salience;
  std::vector<Cluster> clusters;
  std::vector<SentencePlan> plans;
  std::vector<FusionRecord> fusion;
  std::vector<OrderingRecord> ordering;
};

// Runs every per-topic derivation. Topics without an alignment set yield
// empty derivations; sets naming an unknown topic throw IntegrityError.
// The ordering seed of the i-th topic is {seed, i}.
std::vector<TopicDerivation> DeriveDataset(
    const std::vector<AlignmentSet>& sets, const std::vector<Topic>& topics,
    uint64_t seed, Execution exec = Execution::kParallel);

struct MeanSd {
  long count = 0;
  double mean = 0.0;
  double sd = 0.0;  // population standard deviation
};

MeanSd Summarize(const std::vector<double>& values);

// "mean (sd)" with two decimals.
std::string FormatMeanSd(const MeanSd& m);

struct DatasetStats {
  long topics = 0;
  long alignments = 0;
  long salient_ius = 0;
  long clusters = 0;
  MeanSd cluster_size;
  long plans = 0;
  MeanSd clusters_per_sentence;
  long fusion_records = 0;
  long ordering_records = 0;
};

DatasetStats ComputeStats(const std::vector<TopicDerivation>& derived);

// Pyramid-style input: reference summaries and documents, system summaries
// whose sentences were copied from document sentences, and links between
// reference spans and system spans.
struct ScuLink {
  std::string scu_id;
  std::string summary_id;
  Span summary_span;
  std::string system_id;
  Span system_span;
};

struct ExtractiveLink {
  std::string system_id;
  int system_sentence = 0;
  std::string doc_id;
  int doc_sentence = 0;
};

struct PyramidTopic {
  Topic topic;
  std::vector<ParentText> systems;
  std::vector<ScuLink> links;
  std::vector<ExtractiveLink> extractive;

  const ParentText* FindSystem(const std::string& id) const;
};

struct PyramidResult {
  std::vector<AlignmentSet> sets;  // one per topic, input order
  long emitted = 0;
  long skipped = 0;  // per-sentence link pieces without an extractive source
};

// Composes each reference-to-system link with the extractive links of every
// system sentence it touches. A system span crossing sentences is split into
// per-sentence pieces; characters outside every sentence are dropped. Throws
// IntegrityError when a linked system sentence differs from its document
// sentence or a span or index is out of range.
PyramidResult PyramidTransitiveAlign(const std::vector<PyramidTopic>& corpus,
                                     Execution exec = Execution::kParallel);

enum class PairOrigin { kJaccardPositive, kHardNegative, kSameDocNegative };

std::string_view PairOriginName(PairOrigin origin);

struct TrainingPair {
  std::string topic_id;
  InformationUnit summary_iu;
  InformationUnit doc_iu;
  bool positive = false;
  PairOrigin origin = PairOrigin::kSameDocNegative;
};

struct TrainingPairOptions {
  double positive_threshold = 0.25;
  double hard_negative_similarity = 0.89;
};

struct TrainingPairResult {
  std::vector<TrainingPair> pairs;
  bool hard_negatives_omitted = false;
  std::string warning;
};

// Labels every (summary unit, document unit) combination of one topic:
// positive when its joint Jaccard with some gold pair reaches the threshold,
// else a hard negative when its similarity exceeds the cutoff, else a
// same-document negative when the summary unit has a positive in that
// document. Other combinations are dropped. A null scorer, or one that
// throws ScorerError, omits the hard-negative class and sets the warning.
// Output is in (summary unit, document unit) input order.
TrainingPairResult BuildTrainingPairs(
    const AlignmentSet& gold, const std::vector<InformationUnit>& summary_ius,
    const std::vector<InformationUnit>& doc_ius, PairScorer* scorer,
    const TrainingPairOptions& options = {},
    Execution exec = Execution::kParallel);

}  // namespace spanalign

#endif  // SPANALIGN_DERIVE_H_
