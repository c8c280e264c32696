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

#ifndef SPANALIGN_DERIVE_IO_H_
#define SPANALIGN_DERIVE_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "spanalign/derive.h"

namespace spanalign {

// Each writer emits one JSONL record per item, in input order.
void WriteSalience(std::ostream& out, const std::vector<TopicDerivation>& d);
void WriteClusters(std::ostream& out, const std::vector<TopicDerivation>& d);
void WritePlans(std::ostream& out, const std::vector<TopicDerivation>& d);
void WriteFusion(std::ostream& out, const std::vector<TopicDerivation>& d);
void WriteOrdering(std::ostream& out, const std::vector<TopicDerivation>& d);
void WriteTrainingPairs(std::ostream& out,
                        const std::vector<TrainingPair>& pairs);

// Header line plus one row with counts and "mean (sd)" cells.
void WriteStatsTsv(std::ostream& out, const DatasetStats& stats);
std::string StatsJson(const DatasetStats& stats);

// Pyramid JSONL, one record per line, distinguished by "type":
//   text:       {topic_id, kind: document|summary|system, text_id, text,
//                sentences?}
//   scu_link:   {topic_id, scu_id, summary_id, summary_span, system_id,
//                system_span}
//   extractive: {topic_id, system_id, system_sentence, doc_id, doc_sentence}
// Topics keep the order of their first record.
std::vector<PyramidTopic> ReadPyramid(std::istream& in,
                                      const std::string& source);
std::vector<PyramidTopic> LoadPyramid(const std::string& path);

}  // namespace spanalign

#endif  // SPANALIGN_DERIVE_IO_H_
