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

#ifndef SPANALIGN_SALIENCE_EVAL_H_
#define SPANALIGN_SALIENCE_EVAL_H_

#include <vector>

#include "spanalign/alignment.h"
#include "spanalign/alignment_metrics.h"

namespace spanalign {

// Percentages for a set of selected document sentences judged against gold
// alignments.
struct SalienceScores {
  double token_precision = 0.0;  // selected tokens inside a gold doc span
  double iu_recall = 0.0;        // gold summary units reached
  double f1 = 0.0;
  long selected_tokens = 0;
  long salient_tokens = 0;
  long gold_summary_units = 0;
  long covered_summary_units = 0;
  bool empty_selection = false;
  bool empty_gold = false;
};

// A token counts as salient when a gold document span of its document
// covers all of it. A gold summary unit counts as reached when one of its
// gold document spans has at least threshold of its characters inside a
// single selected sentence.
SalienceScores SentenceSalienceEval(const std::vector<Sentence>& selected,
                                    const AlignmentSet& gold,
                                    double threshold = kDefaultThreshold);

}  // namespace spanalign

#endif  // SPANALIGN_SALIENCE_EVAL_H_
