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

#include "spanalign/corpus_io.h"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "spanalign/errors.h"
#include "spanalign/jsonl.h"

namespace spanalign {
using jsonl::Dump;
using jsonl::ForEachRecord;
using jsonl::json;
using jsonl::ordered_json;
using jsonl::ParseParentText;
using jsonl::ParseSpan;
using jsonl::RequireString;
using jsonl::SpanJson;
using jsonl::Where;

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  return out;
}

std::vector<Topic> ReadTopics(std::istream& in, const std::string& source) {
  struct Pending {
    std::vector<ParentText> documents;
    std::vector<ParentText> summaries;
  };
  std::vector<std::string> order;
  std::map<std::string, Pending> pending;
  ForEachRecord(in, source, [&](const json& r, int line) {
    const std::string where = Where(source, line);
    const std::string topic_id = RequireString(r, "topic_id", where);
    const std::string kind = RequireString(r, "kind", where);
    const std::string text_id = RequireString(r, "text_id", where);
    TextKind text_kind;
    if (kind == "document") {
      text_kind = TextKind::kDocument;
    } else if (kind == "summary") {
      text_kind = TextKind::kSummary;
    } else {
      throw ParseError(where + "kind must be 'document' or 'summary'");
    }
    ParentText parsed = ParseParentText(r, text_id, text_kind, source, line);
    auto [it, inserted] = pending.try_emplace(topic_id);
    if (inserted) order.push_back(topic_id);
    auto& bucket = text_kind == TextKind::kDocument ? it->second.documents
                                                    : it->second.summaries;
    bucket.push_back(std::move(parsed));
  });
  std::vector<Topic> topics;
  for (const std::string& id : order) {
    Pending& p = pending.at(id);
    try {
      topics.emplace_back(id, std::move(p.documents), std::move(p.summaries));
    } catch (const IntegrityError& e) {
      throw IntegrityError(source + ": " + e.what());
    }
  }
  return topics;
}

std::vector<Topic> LoadTopics(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ReadTopics(in, path);
}

Topic LoadTopic(const std::string& path) {
  std::vector<Topic> topics = LoadTopics(path);
  if (topics.size() != 1) {
    throw IntegrityError(path + ": expected exactly one topic, found " +
                         std::to_string(topics.size()));
  }
  return std::move(topics.front());
}

void WriteTopics(std::ostream& out, const std::vector<Topic>& topics) {
  for (const Topic& topic : topics) {
    for (const auto* group : {&topic.documents(), &topic.summaries()}) {
      for (const ParentText& t : *group) {
        ordered_json r;
        r["topic_id"] = topic.id();
        r["kind"] = std::string(TextKindName(t.kind()));
        r["text_id"] = t.id();
        r["text"] = t.text();
        ordered_json sentences = ordered_json::array();
        for (const Sentence& s : t.sentences()) {
          ordered_json entry;
          entry["start"] = s.offset;
          entry["end"] = s.offset + s.length;
          sentences.push_back(std::move(entry));
        }
        r["sentences"] = std::move(sentences);
        out << Dump(r) << '\n';
      }
    }
  }
}

void SaveTopics(const std::string& path, const std::vector<Topic>& topics) {
  std::ofstream out = OpenForWrite(path);
  WriteTopics(out, topics);
}

std::vector<AlignmentSet> ReadAlignments(std::istream& in,
                                         const std::string& source) {
  std::vector<AlignmentSet> sets;
  std::map<std::string, size_t> index;
  ForEachRecord(in, source, [&](const json& r, int line) {
    const std::string where = Where(source, line);
    auto [topic_id, pair] = jsonl::ParsePair(r, where);
    auto [it, inserted] = index.try_emplace(topic_id, sets.size());
    if (inserted) sets.emplace_back(topic_id);
    sets[it->second].Add(std::move(pair));
  });
  return sets;
}

std::vector<AlignmentSet> LoadAlignments(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ReadAlignments(in, path);
}

void WriteAlignments(std::ostream& out,
                     const std::vector<AlignmentSet>& sets) {
  for (const AlignmentSet& set : sets) {
    for (const AlignmentPair& pair : set.pairs()) {
      const ordered_json r = jsonl::PairJson(set.topic_id(), pair);
      out << Dump(r) << '\n';
    }
  }
}

void SaveAlignments(const std::string& path,
                    const std::vector<AlignmentSet>& sets) {
  std::ofstream out = OpenForWrite(path);
  WriteAlignments(out, sets);
}

void ResolveAlignments(AlignmentSet& set, const Topic& topic) {
  size_t n = 0;
  for (AlignmentPair& pair : set.mutable_pairs()) {
    ++n;
    const std::string where = "topic '" + topic.id() + "' pair " +
                              std::to_string(n) + ": ";
    const ParentText* summary = topic.FindSummary(pair.summary_iu.parent_id);
    const ParentText* doc = topic.FindDocument(pair.doc_iu.parent_id);
    if (summary == nullptr) {
      throw IntegrityError(where + "'" + pair.summary_iu.parent_id +
                           "' is not a summary of the topic");
    }
    if (doc == nullptr) {
      throw IntegrityError(where + "'" + pair.doc_iu.parent_id +
                           "' is not a document of the topic");
    }
    try {
      pair.summary_iu = MakeUnit(*summary, std::move(pair.summary_iu.span));
      pair.doc_iu = MakeUnit(*doc, std::move(pair.doc_iu.span));
    } catch (const IntegrityError& e) {
      throw IntegrityError(where + e.what());
    }
  }
}

std::vector<TopicUnits> ReadUnits(std::istream& in, const std::string& source,
                                  const std::vector<Topic>& topics) {
  std::vector<TopicUnits> out;
  std::map<std::string, size_t> index;
  ForEachRecord(in, source, [&](const json& r, int line) {
    const std::string where =
        source + ": record " + std::to_string(line) + ": ";
    const std::string text_id = RequireString(r, "text_id", where);
    const Topic* topic = nullptr;
    const ParentText* parent = nullptr;
    auto t = r.find("topic_id");
    for (const Topic& candidate : topics) {
      if (t != r.end() && t->is_string() &&
          candidate.id() != t->get<std::string>()) {
        continue;
      }
      if (const ParentText* p = candidate.Find(text_id)) {
        if (parent != nullptr) {
          throw IntegrityError(where + "text id '" + text_id +
                               "' is ambiguous without topic_id");
        }
        topic = &candidate;
        parent = p;
      }
    }
    if (parent == nullptr) {
      throw IntegrityError(where + "unknown text '" + text_id + "'");
    }
    if (!r.contains("ranges") || !r.contains("sentence_index")) {
      throw ParseError(where + "missing ranges or sentence_index");
    }
    InformationUnit unit;
    try {
      unit = MakeUnit(*parent, ParseSpan(r.at("ranges"), where));
    } catch (const IntegrityError& e) {
      const std::string what = e.what();
      throw IntegrityError(what.rfind(source, 0) == 0 ? what : where + what);
    }
    const int sentence_index = r.at("sentence_index").get<int>();
    if (sentence_index != unit.sentence_index) {
      throw IntegrityError(where + "span starts in sentence " +
                           std::to_string(unit.sentence_index) +
                           ", record says " + std::to_string(sentence_index));
    }
    auto [it, inserted] = index.try_emplace(topic->id(), out.size());
    if (inserted) out.push_back({topic->id(), {}});
    out[it->second].units.push_back(std::move(unit));
  });
  return out;
}

std::vector<TopicUnits> ImportUnits(const std::string& path,
                                    const std::vector<Topic>& topics) {
  std::ifstream in = OpenForRead(path);
  return ReadUnits(in, path, topics);
}

void WriteUnits(std::ostream& out, const std::vector<TopicUnits>& units) {
  for (const TopicUnits& group : units) {
    for (const InformationUnit& unit : group.units) {
      ordered_json r;
      r["topic_id"] = group.topic_id;
      r["text_id"] = unit.parent_id;
      r["sentence_index"] = unit.sentence_index;
      r["ranges"] = SpanJson(unit.span);
      out << Dump(r) << '\n';
    }
  }
}

}  // namespace spanalign
