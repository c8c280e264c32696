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

#include "spanalign/corpus.h"

#include <algorithm>
#include <set>

#include "spanalign/errors.h"
#include "spanalign/sentence_splitter.h"
#include "spanalign/utf8.h"

namespace spanalign {

std::string_view TextKindName(TextKind kind) {
  return kind == TextKind::kDocument ? "document" : "summary";
}

ParentText::ParentText(std::string id, TextKind kind, std::string text)
    : id_(std::move(id)),
      kind_(kind),
      text_(std::move(text)),
      code_points_(DecodeUtf8(text_)) {
  sentences_ = SplitSentences(code_points_, id_);
}

ParentText::ParentText(std::string id, TextKind kind, std::string text,
                       const std::vector<CharRange>& sentence_ranges)
    : id_(std::move(id)),
      kind_(kind),
      text_(std::move(text)),
      code_points_(DecodeUtf8(text_)) {
  CharIndex previous_end = 0;
  for (const CharRange& r : sentence_ranges) {
    if (r.start < previous_end || r.start >= r.end || r.end > size()) {
      throw IntegrityError("text '" + id_ + "': sentence range [" +
                           std::to_string(r.start) + ", " +
                           std::to_string(r.end) +
                           ") is empty, out of order or out of bounds");
    }
    Sentence s;
    s.parent_id = id_;
    s.index = static_cast<int>(sentences_.size());
    s.offset = r.start;
    s.length = r.length();
    s.text = Slice(r);
    sentences_.push_back(std::move(s));
    previous_end = r.end;
  }
}

int ParentText::SentenceIndexAt(CharIndex pos) const {
  auto it = std::upper_bound(
      sentences_.begin(), sentences_.end(), pos,
      [](CharIndex p, const Sentence& s) { return p < s.offset + s.length; });
  if (it == sentences_.end() || it->offset > pos) return -1;
  return it->index;
}

std::string ParentText::Slice(CharRange range) const {
  return EncodeUtf8(std::u32string_view(code_points_)
                        .substr(range.start, range.length()));
}

InformationUnit MakeUnit(const ParentText& parent, Span span) {
  if (span.empty()) {
    throw IntegrityError("empty span in text '" + parent.id() + "'");
  }
  if (span.end() > parent.size()) {
    throw IntegrityError("span end " + std::to_string(span.end()) +
                         " exceeds length " + std::to_string(parent.size()) +
                         " of text '" + parent.id() + "'");
  }
  InformationUnit unit;
  unit.surface = SpanTextUtf8(span, parent.code_points());
  unit.sentence_index = parent.SentenceIndexAt(span.begin());
  unit.parent_id = parent.id();
  unit.span = std::move(span);
  return unit;
}

InformationUnit SentenceUnit(const ParentText& parent, const Sentence& s) {
  return MakeUnit(parent, Span{s.range()});
}

Topic::Topic(std::string topic_id, std::vector<ParentText> documents,
             std::vector<ParentText> summaries)
    : id_(std::move(topic_id)),
      documents_(std::move(documents)),
      summaries_(std::move(summaries)) {
  if (documents_.empty()) {
    throw IntegrityError("topic '" + id_ + "' has no documents");
  }
  std::set<std::string> seen;
  for (const auto* group : {&documents_, &summaries_}) {
    for (const ParentText& t : *group) {
      if (!seen.insert(t.id()).second) {
        throw IntegrityError("topic '" + id_ + "' repeats text id '" +
                             t.id() + "'");
      }
    }
  }
}

const ParentText* Topic::FindDocument(std::string_view id) const {
  for (const ParentText& t : documents_) {
    if (t.id() == id) return &t;
  }
  return nullptr;
}

const ParentText* Topic::FindSummary(std::string_view id) const {
  for (const ParentText& t : summaries_) {
    if (t.id() == id) return &t;
  }
  return nullptr;
}

const ParentText* Topic::Find(std::string_view id) const {
  const ParentText* t = FindDocument(id);
  return t != nullptr ? t : FindSummary(id);
}

std::vector<Sentence> Topic::DocumentSentences() const {
  std::vector<Sentence> out;
  for (const ParentText& d : documents_) {
    out.insert(out.end(), d.sentences().begin(), d.sentences().end());
  }
  return out;
}

}  // namespace spanalign
