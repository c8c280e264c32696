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

#include "spanalign/derive_io.h"

#include <fstream>
#include <map>
#include <ostream>

#include "spanalign/corpus_io.h"
#include "spanalign/errors.h"
#include "spanalign/jsonl.h"

namespace spanalign {
using jsonl::Dump;
using jsonl::ForEachRecord;
using jsonl::json;
using jsonl::ordered_json;
using jsonl::ParseParentText;
using jsonl::ParseSpan;
using jsonl::RequireInt;
using jsonl::RequireString;
using jsonl::SpanJson;
using jsonl::Where;

namespace {

ordered_json UnitJson(const InformationUnit& u, const char* id_key,
                      const char* span_key, const char* text_key) {
  ordered_json r;
  r[id_key] = u.parent_id;
  r[span_key] = SpanJson(u.span);
  r[text_key] = u.surface;
  return r;
}

ordered_json ClusterIds(const std::vector<Cluster>& clusters) {
  ordered_json ids = ordered_json::array();
  for (const Cluster& c : clusters) ids.push_back(c.cluster_id);
  return ids;
}

ordered_json ClusterInputs(const std::vector<Cluster>& clusters) {
  ordered_json inputs = ordered_json::array();
  for (const Cluster& c : clusters) {
    ordered_json surfaces = ordered_json::array();
    for (const InformationUnit& m : c.members) surfaces.push_back(m.surface);
    inputs.push_back(std::move(surfaces));
  }
  return inputs;
}

}  // namespace

void WriteSalience(std::ostream& out, const std::vector<TopicDerivation>& d) {
  for (const TopicDerivation& t : d) {
    for (const InformationUnit& u : t.salience) {
      ordered_json r;
      r["topic_id"] = t.topic_id;
      r.update(UnitJson(u, "doc_id", "doc_span", "text"));
      out << Dump(r) << '\n';
    }
  }
}

void WriteClusters(std::ostream& out, const std::vector<TopicDerivation>& d) {
  for (const TopicDerivation& t : d) {
    for (const Cluster& c : t.clusters) {
      ordered_json r;
      r["topic_id"] = c.topic_id;
      r["cluster_id"] = c.cluster_id;
      r.update(UnitJson(c.summary_iu, "summary_id", "summary_span",
                        "summary_text"));
      ordered_json members = ordered_json::array();
      for (const InformationUnit& m : c.members) {
        members.push_back(UnitJson(m, "doc_id", "doc_span", "text"));
      }
      r["members"] = std::move(members);
      out << Dump(r) << '\n';
    }
  }
}

void WritePlans(std::ostream& out, const std::vector<TopicDerivation>& d) {
  for (const TopicDerivation& t : d) {
    for (const SentencePlan& p : t.plans) {
      ordered_json r;
      r["topic_id"] = p.topic_id;
      r["summary_id"] = p.summary_id;
      r["sentence_index"] = p.sentence_index;
      r["target"] = p.target;
      r["cluster_ids"] = ClusterIds(p.clusters);
      out << Dump(r) << '\n';
    }
  }
}

void WriteFusion(std::ostream& out, const std::vector<TopicDerivation>& d) {
  for (const TopicDerivation& t : d) {
    for (const FusionRecord& f : t.fusion) {
      ordered_json r;
      r["topic_id"] = f.topic_id;
      r["summary_id"] = f.summary_id;
      r["sentence_index"] = f.sentence_index;
      r["inputs"] = f.inputs;
      r["target"] = f.target;
      out << Dump(r) << '\n';
    }
  }
}

void WriteOrdering(std::ostream& out, const std::vector<TopicDerivation>& d) {
  for (const TopicDerivation& t : d) {
    for (const OrderingRecord& o : t.ordering) {
      ordered_json r;
      r["topic_id"] = o.topic_id;
      r["summary_id"] = o.summary_id;
      ordered_json items = ordered_json::array();
      for (const SentencePlan& p : o.items) {
        ordered_json item;
        item["cluster_ids"] = ClusterIds(p.clusters);
        item["inputs"] = ClusterInputs(p.clusters);
        items.push_back(std::move(item));
      }
      r["items"] = std::move(items);
      r["gold_permutation"] = o.gold_permutation;
      out << Dump(r) << '\n';
    }
  }
}

void WriteTrainingPairs(std::ostream& out,
                        const std::vector<TrainingPair>& pairs) {
  for (const TrainingPair& p : pairs) {
    ordered_json r;
    r["topic_id"] = p.topic_id;
    r.update(UnitJson(p.summary_iu, "summary_id", "summary_span",
                      "summary_text"));
    r.update(UnitJson(p.doc_iu, "doc_id", "doc_span", "doc_text"));
    r["label"] = p.positive ? "positive" : "negative";
    r["origin"] = std::string(PairOriginName(p.origin));
    out << Dump(r) << '\n';
  }
}

void WriteStatsTsv(std::ostream& out, const DatasetStats& s) {
  out << "#alignments\t#salient IUs\t#clusters\tcluster size\t"
         "#clusters per sent\n";
  out << s.alignments << '\t' << s.salient_ius << '\t' << s.clusters << '\t'
      << FormatMeanSd(s.cluster_size) << '\t'
      << FormatMeanSd(s.clusters_per_sentence) << '\n';
}

std::string StatsJson(const DatasetStats& s) {
  auto mean_sd = [](const MeanSd& m) {
    ordered_json j;
    j["count"] = m.count;
    j["mean"] = m.mean;
    j["sd"] = m.sd;
    j["formatted"] = FormatMeanSd(m);
    return j;
  };
  ordered_json r;
  r["topics"] = s.topics;
  r["alignments"] = s.alignments;
  r["salient_ius"] = s.salient_ius;
  r["clusters"] = s.clusters;
  r["cluster_size"] = mean_sd(s.cluster_size);
  r["plans"] = s.plans;
  r["clusters_per_sentence"] = mean_sd(s.clusters_per_sentence);
  r["fusion_records"] = s.fusion_records;
  r["ordering_records"] = s.ordering_records;
  return r.dump(2);
}

std::vector<PyramidTopic> ReadPyramid(std::istream& in,
                                      const std::string& source) {
  struct Pending {
    std::vector<ParentText> documents;
    std::vector<ParentText> summaries;
    std::vector<ParentText> systems;
    std::vector<ScuLink> links;
    std::vector<ExtractiveLink> extractive;
  };
  std::vector<std::string> order;
  std::map<std::string, Pending> pending;
  ForEachRecord(in, source, [&](const json& r, int line) {
    const std::string where = Where(source, line);
    const std::string type = RequireString(r, "type", where);
    const std::string topic_id = RequireString(r, "topic_id", where);
    auto [it, inserted] = pending.try_emplace(topic_id);
    if (inserted) order.push_back(topic_id);
    Pending& p = it->second;
    if (type == "text") {
      const std::string kind = RequireString(r, "kind", where);
      const std::string text_id = RequireString(r, "text_id", where);
      if (kind == "document") {
        p.documents.push_back(ParseParentText(r, text_id, TextKind::kDocument,
                                              source, line));
      } else if (kind == "summary") {
        p.summaries.push_back(ParseParentText(r, text_id, TextKind::kSummary,
                                              source, line));
      } else if (kind == "system") {
        p.systems.push_back(ParseParentText(r, text_id, TextKind::kSummary,
                                            source, line));
      } else {
        throw ParseError(where + "kind must be document, summary or system");
      }
    } else if (type == "scu_link") {
      ScuLink link;
      link.scu_id = RequireString(r, "scu_id", where);
      link.summary_id = RequireString(r, "summary_id", where);
      link.system_id = RequireString(r, "system_id", where);
      if (!r.contains("summary_span") || !r.contains("system_span")) {
        throw ParseError(where + "missing summary_span or system_span");
      }
      link.summary_span = ParseSpan(r.at("summary_span"), where);
      link.system_span = ParseSpan(r.at("system_span"), where);
      p.links.push_back(std::move(link));
    } else if (type == "extractive") {
      ExtractiveLink e;
      e.system_id = RequireString(r, "system_id", where);
      e.system_sentence = RequireInt(r, "system_sentence", where);
      e.doc_id = RequireString(r, "doc_id", where);
      e.doc_sentence = RequireInt(r, "doc_sentence", where);
      p.extractive.push_back(std::move(e));
    } else {
      throw ParseError(where + "unknown record type '" + type + "'");
    }
  });
  std::vector<PyramidTopic> topics;
  for (const std::string& id : order) {
    Pending& p = pending.at(id);
    std::map<std::string, int> seen;
    for (const ParentText& s : p.systems) {
      if (++seen[s.id()] > 1) {
        throw IntegrityError(source + ": topic " + id +
                             " repeats system id '" + s.id() + "'");
      }
    }
    try {
      topics.push_back({Topic(id, std::move(p.documents),
                              std::move(p.summaries)),
                        std::move(p.systems), std::move(p.links),
                        std::move(p.extractive)});
    } catch (const IntegrityError& e) {
      throw IntegrityError(source + ": " + e.what());
    }
  }
  return topics;
}

std::vector<PyramidTopic> LoadPyramid(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ReadPyramid(in, path);
}

}  // namespace spanalign
