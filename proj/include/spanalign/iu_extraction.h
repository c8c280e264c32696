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

#ifndef SPANALIGN_IU_EXTRACTION_H_
#define SPANALIGN_IU_EXTRACTION_H_

#include <cstdint>
#include <vector>

#include "spanalign/corpus.h"
#include "spanalign/corpus_io.h"
#include "spanalign/parallel.h"

namespace spanalign {

// Rule-based predicate-argument extraction. A sentence is cut into clauses
// at commas, semicolons, colons and clause-level coordinators when the text
// on both sides carries a verb, and before relative pronouns that introduce
// a verb. Each clause with a verb becomes one unit. A clause that starts
// with its verb borrows the nearest preceding verbless phrase, or the
// previous clause's subject, which makes the unit discontiguous.
// Units come out in clause order. Verbless sentences yield no units.
std::vector<InformationUnit> ExtractUnits(const ParentText& parent,
                                          const Sentence& sentence);

// Units of every sentence of every text in the topic, ordered by
// (text id, sentence index, clause).
TopicUnits ExtractTopicUnits(const Topic& topic,
                             Execution execution = Execution::kParallel);

// Near-duplicate test for two annotations of one sentence: same number of
// units and, after ordering each by span, pairwise Jaccard >= min_jaccard.
bool AnnotationsAgree(const std::vector<Span>& a, const std::vector<Span>& b,
                      double min_jaccard = 0.95);

struct CanonicalChoice {
  size_t index = 0;  // position of the chosen annotation in the input
  std::vector<Span> annotation;
};

// Picks one worker annotation of a sentence. Agreeing annotations are
// grouped; if every group is a singleton the annotation with the most units
// wins, otherwise a member of the largest group. Ties are broken with a
// generator seeded by seed. Throws InvalidArgument on empty input.
CanonicalChoice SelectCanonicalAnnotation(
    const std::vector<std::vector<Span>>& annotations, uint64_t seed);

}  // namespace spanalign

#endif  // SPANALIGN_IU_EXTRACTION_H_
