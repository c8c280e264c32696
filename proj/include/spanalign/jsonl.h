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

#ifndef SPANALIGN_JSONL_H_
#define SPANALIGN_JSONL_H_

#include <istream>
#include <string>
#include <utility>

#include "json.hpp"
#include "spanalign/alignment.h"
#include "spanalign/corpus.h"
#include "spanalign/errors.h"
#include "spanalign/span.h"

namespace spanalign::jsonl {

using nlohmann::json;
using nlohmann::ordered_json;

// "source:line: "
std::string Where(const std::string& source, int line);

// Calls fn(record, line_number) for every non-blank line. Malformed JSON,
// non-object records and JSON type errors raised by fn become ParseError
// with the line number.
template <typename Fn>
void ForEachRecord(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(Where(source, number) + "malformed JSON: " + e.what());
    }
    if (!record.is_object()) {
      throw ParseError(Where(source, number) + "record is not an object");
    }
    try {
      fn(record, number);
    } catch (const json::exception& e) {
      throw ParseError(Where(source, number) + e.what());
    }
  }
}

std::string RequireString(const json& r, const char* key,
                          const std::string& where);
int RequireInt(const json& r, const char* key, const std::string& where);

// [[start, end], ...]; empty or negative ranges are IntegrityError.
Span ParseSpan(const json& value, const std::string& where);
ordered_json SpanJson(const Span& span);

// Builds a text from a record's "text" and optional "sentences" fields.
ParentText ParseParentText(const json& r, const std::string& text_id,
                           TextKind kind, const std::string& source, int line);

// Alignment record fields: topic_id, summary_id, summary_span, doc_id,
// doc_span, probability?, provenance (default_provenance when absent and
// allowed).
std::pair<std::string, AlignmentPair> ParsePair(
    const json& r, const std::string& where,
    const Provenance* default_provenance = nullptr);
ordered_json PairJson(const std::string& topic_id, const AlignmentPair& pair);

// Compact, non-ASCII kept as UTF-8, invalid UTF-8 rejected.
std::string Dump(const ordered_json& j);

}  // namespace spanalign::jsonl

#endif  // SPANALIGN_JSONL_H_
