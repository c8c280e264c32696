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

#ifndef SPANALIGN_AGGREGATION_H_
#define SPANALIGN_AGGREGATION_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spanalign/alignment.h"
#include "spanalign/parallel.h"

namespace spanalign {

using Matrix = std::vector<std::vector<double>>;

struct AffinityParams {
  double damping = 0.5;
  int max_iter = 200;
  int convergence_iter = 15;
  // Self-similarity of every point; the median off-diagonal similarity
  // when unset.
  std::optional<double> preference;
  // Seed of the 1e-12 relative perturbation that breaks exact ties between
  // identical points.
  uint64_t noise_seed = 0;
};

struct ClusterResult {
  std::vector<int> labels;     // cluster of each point, 0-based
  std::vector<int> exemplars;  // point index of each cluster's exemplar
  int iterations = 0;
  bool converged = false;
};

// Affinity propagation by responsibility/availability message passing.
// Throws InvalidArgument for a non-square or asymmetric matrix or damping
// outside [0.5, 1). When no exemplar emerges every point becomes its own
// cluster and converged is false.
ClusterResult AffinityPropagation(const Matrix& similarity,
                                  const AffinityParams& params = {},
                                  Execution execution = Execution::kParallel);

double MedianOffDiagonal(const Matrix& similarity);

// Sum of summary and document span lengths.
CharIndex JointLength(const AlignmentPair& pair);

// Worker consensus for one candidate: annotations are clustered by joint
// Jaccard, the biggest cluster wins (seeded random choice among equals), and
// its member with the upper-median joint length is returned. Empty input
// gives nothing.
std::optional<AlignmentPair> AggregateSpanAnnotations(
    const std::vector<AlignmentPair>& annotations, uint64_t seed,
    const AffinityParams& params = {},
    Execution execution = Execution::kParallel);

// Worker annotation JSONL: {"worker_id", "candidate_id"?, "pair": alignment
// record}. Annotations of one candidate share (topic, summary id, doc id,
// candidate id).
struct WorkerAnnotation {
  std::string worker_id;
  std::string candidate_id;
  std::string topic_id;
  AlignmentPair pair;
};

std::vector<WorkerAnnotation> ReadWorkerAnnotations(std::istream& in,
                                                    const std::string& source);
std::vector<WorkerAnnotation> LoadWorkerAnnotations(const std::string& path);
void WriteWorkerAnnotations(std::ostream& out,
                            const std::vector<WorkerAnnotation>& annotations);

// Groups annotations by candidate (first-appearance order), aggregates each
// group with a seed derived from (seed, group index), and returns one gold
// set per topic with provenance kAnnotated.
std::vector<AlignmentSet> AggregateAll(
    const std::vector<WorkerAnnotation>& annotations, uint64_t seed,
    const AffinityParams& params = {},
    Execution execution = Execution::kParallel);

}  // namespace spanalign

#endif  // SPANALIGN_AGGREGATION_H_
