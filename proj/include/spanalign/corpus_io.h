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

#ifndef SPANALIGN_CORPUS_IO_H_
#define SPANALIGN_CORPUS_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "spanalign/alignment.h"
#include "spanalign/corpus.h"

namespace spanalign {

// Topic files are JSONL with one record per text:
//   {"topic_id", "kind": "document"|"summary", "text_id", "text",
//    "sentences"?: [{"start", "end"}]}
// Texts without "sentences" are segmented with SplitSentences. Topics come
// back in order of first appearance.
std::vector<Topic> ReadTopics(std::istream& in, const std::string& source);
std::vector<Topic> LoadTopics(const std::string& path);
// Requires the file to hold exactly one topic.
Topic LoadTopic(const std::string& path);

// Canonical form: keys in schema order, sentences always present.
void WriteTopics(std::ostream& out, const std::vector<Topic>& topics);
void SaveTopics(const std::string& path, const std::vector<Topic>& topics);

// Alignment files are JSONL:
//   {"topic_id", "summary_id", "summary_span": [[s, e], ...], "doc_id",
//    "doc_span": [[s, e], ...], "probability"?, "provenance"}
// Units read this way carry spans and parent ids only; ResolveAlignments
// attaches surfaces and sentence indices. Sets come back in order of first
// appearance of their topic id.
std::vector<AlignmentSet> ReadAlignments(std::istream& in,
                                         const std::string& source);
std::vector<AlignmentSet> LoadAlignments(const std::string& path);
void WriteAlignments(std::ostream& out, const std::vector<AlignmentSet>& sets);
void SaveAlignments(const std::string& path,
                    const std::vector<AlignmentSet>& sets);

// Checks every pair against the topic (summary side in a summary, document
// side in a document, spans in bounds) and fills surfaces. Throws
// IntegrityError naming the offending pair.
void ResolveAlignments(AlignmentSet& set, const Topic& topic);

struct TopicUnits {
  std::string topic_id;
  std::vector<InformationUnit> units;
};

// Unit files are JSONL: {"topic_id"?, "text_id", "sentence_index",
// "ranges": [[s, e], ...]}. Without topic_id the text id must be unique
// across the supplied topics. Throws IntegrityError with the record number
// for unknown texts, out-of-bounds spans and sentence index mismatches.
std::vector<TopicUnits> ReadUnits(std::istream& in, const std::string& source,
                                  const std::vector<Topic>& topics);
std::vector<TopicUnits> ImportUnits(const std::string& path,
                                    const std::vector<Topic>& topics);
void WriteUnits(std::ostream& out, const std::vector<TopicUnits>& units);

// Throws ParseError on failure to open.
std::ifstream OpenForRead(const std::string& path);
std::ofstream OpenForWrite(const std::string& path);

}  // namespace spanalign

#endif  // SPANALIGN_CORPUS_IO_H_
