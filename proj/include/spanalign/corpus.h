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

#ifndef SPANALIGN_CORPUS_H_
#define SPANALIGN_CORPUS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spanalign/span.h"

namespace spanalign {

enum class TextKind { kDocument, kSummary };

std::string_view TextKindName(TextKind kind);

struct Sentence {
  std::string parent_id;
  int index = 0;
  CharIndex offset = 0;
  CharIndex length = 0;
  std::string text;

  CharRange range() const { return {offset, offset + length}; }
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// One document or summary with its sentence segmentation.
class ParentText {
 public:
  // Splits the text with SplitSentences.
  ParentText(std::string id, TextKind kind, std::string text);
  // Uses caller-supplied sentence ranges. Throws IntegrityError unless the
  // ranges are non-empty, in bounds, ascending and non-overlapping.
  ParentText(std::string id, TextKind kind, std::string text,
             const std::vector<CharRange>& sentence_ranges);

  const std::string& id() const { return id_; }
  TextKind kind() const { return kind_; }
  const std::string& text() const { return text_; }
  std::u32string_view code_points() const { return code_points_; }
  CharIndex size() const { return static_cast<CharIndex>(code_points_.size()); }
  const std::vector<Sentence>& sentences() const { return sentences_; }

  // Index of the sentence containing pos, or -1 if pos falls in a gap.
  int SentenceIndexAt(CharIndex pos) const;
  std::string Slice(CharRange range) const;

 private:
  std::string id_;
  TextKind kind_;
  std::string text_;
  std::u32string code_points_;
  std::vector<Sentence> sentences_;
};

// A proposition-level unit: a span within one parent text. sentence_index
// is the sentence holding the span's first character, or -1 when the unit
// was read without its parent text.
struct InformationUnit {
  Span span;
  std::string parent_id;
  int sentence_index = -1;
  std::string surface;
};

// Validates the span against the parent and fills surface and
// sentence_index. Throws IntegrityError on an empty or out-of-bounds span.
InformationUnit MakeUnit(const ParentText& parent, Span span);

// Unit covering a whole sentence.
InformationUnit SentenceUnit(const ParentText& parent, const Sentence& s);

class Topic {
 public:
  // Throws IntegrityError when there are no documents or ids repeat.
  Topic(std::string topic_id, std::vector<ParentText> documents,
        std::vector<ParentText> summaries);

  const std::string& id() const { return id_; }
  const std::vector<ParentText>& documents() const { return documents_; }
  const std::vector<ParentText>& summaries() const { return summaries_; }

  const ParentText* FindDocument(std::string_view id) const;
  const ParentText* FindSummary(std::string_view id) const;
  const ParentText* Find(std::string_view id) const;

  // All document sentences in (document order, sentence index) order.
  std::vector<Sentence> DocumentSentences() const;

 private:
  std::string id_;
  std::vector<ParentText> documents_;
  std::vector<ParentText> summaries_;
};

}  // namespace spanalign

#endif  // SPANALIGN_CORPUS_H_
