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

#include "spanalign/jsonl.h"

#include <vector>

namespace spanalign::jsonl {

std::string Where(const std::string& source, int line) {
  return source + ":" + std::to_string(line) + ": ";
}

std::string RequireString(const json& r, const char* key,
                          const std::string& where) {
  auto it = r.find(key);
  if (it == r.end() || !it->is_string()) {
    throw ParseError(where + "missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

int RequireInt(const json& r, const char* key, const std::string& where) {
  auto it = r.find(key);
  if (it == r.end() || !it->is_number_integer()) {
    throw ParseError(where + "missing integer field '" + key + "'");
  }
  return it->get<int>();
}

Span ParseSpan(const json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) {
    throw ParseError(where + "span must be a non-empty array of [start, end]");
  }
  std::vector<CharRange> ranges;
  for (const json& r : value) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
        !r[1].is_number_integer()) {
      throw ParseError(where + "span range must be [start, end] integers");
    }
    const CharIndex s = r[0].get<CharIndex>();
    const CharIndex e = r[1].get<CharIndex>();
    if (s < 0 || s >= e) {
      throw IntegrityError(where + "empty or negative span range [" +
                           std::to_string(s) + ", " + std::to_string(e) + ")");
    }
    ranges.push_back({s, e});
  }
  return Span(std::move(ranges));
}

ordered_json SpanJson(const Span& span) {
  ordered_json out = ordered_json::array();
  for (const CharRange& r : span.ranges()) {
    out.push_back(ordered_json::array({r.start, r.end}));
  }
  return out;
}

ParentText ParseParentText(const json& r, const std::string& text_id,
                           TextKind kind, const std::string& source, int line) {
  const std::string where = Where(source, line);
  const std::string text = RequireString(r, "text", where);
  try {
    auto it = r.find("sentences");
    if (it == r.end() || it->is_null()) return ParentText(text_id, kind, text);
    if (!it->is_array()) throw ParseError(where + "sentences not an array");
    std::vector<CharRange> ranges;
    for (const json& s : *it) {
      if (!s.is_object() || !s.contains("start") || !s.contains("end")) {
        throw ParseError(where + "sentence entries need start and end");
      }
      ranges.push_back(
          {s.at("start").get<CharIndex>(), s.at("end").get<CharIndex>()});
    }
    return ParentText(text_id, kind, text, ranges);
  } catch (const IntegrityError& e) {
    throw IntegrityError(where + e.what());
  } catch (const ParseError& e) {
    const std::string what = e.what();
    throw ParseError(what.rfind(source, 0) == 0 ? what : where + what);
  }
}

std::pair<std::string, AlignmentPair> ParsePair(
    const json& r, const std::string& where,
    const Provenance* default_provenance) {
  AlignmentPair pair;
  std::string topic_id = RequireString(r, "topic_id", where);
  pair.summary_iu.parent_id = RequireString(r, "summary_id", where);
  pair.doc_iu.parent_id = RequireString(r, "doc_id", where);
  if (!r.contains("summary_span") || !r.contains("doc_span")) {
    throw ParseError(where + "missing summary_span or doc_span");
  }
  pair.summary_iu.span = ParseSpan(r.at("summary_span"), where);
  pair.doc_iu.span = ParseSpan(r.at("doc_span"), where);
  auto p = r.find("probability");
  if (p != r.end() && !p->is_null()) {
    if (!p->is_number()) throw ParseError(where + "probability not a number");
    const double v = p->get<double>();
    if (!(v >= 0.0 && v <= 1.0)) {
      throw IntegrityError(where + "probability outside [0, 1]");
    }
    pair.probability = v;
  }
  if (!r.contains("provenance") && default_provenance != nullptr) {
    pair.provenance = *default_provenance;
  } else {
    try {
      pair.provenance = ParseProvenance(RequireString(r, "provenance", where));
    } catch (const InvalidArgument& e) {
      throw ParseError(where + e.what());
    }
  }
  return {std::move(topic_id), std::move(pair)};
}

ordered_json PairJson(const std::string& topic_id, const AlignmentPair& pair) {
  ordered_json r;
  r["topic_id"] = topic_id;
  r["summary_id"] = pair.summary_iu.parent_id;
  r["summary_span"] = SpanJson(pair.summary_iu.span);
  r["doc_id"] = pair.doc_iu.parent_id;
  r["doc_span"] = SpanJson(pair.doc_iu.span);
  if (pair.probability) r["probability"] = *pair.probability;
  r["provenance"] = std::string(ProvenanceName(pair.provenance));
  return r;
}

std::string Dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

}  // namespace spanalign::jsonl
