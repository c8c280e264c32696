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

#include "spanalign/derive.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <utility>

#include "spanalign/alignment_metrics.h"
#include "spanalign/errors.h"

namespace spanalign {
namespace {

using UnitKey = std::pair<std::string, Span>;

UnitKey KeyOf(const InformationUnit& u) { return {u.parent_id, u.span}; }

std::mt19937_64 GroupRng(uint64_t seed, uint64_t group) {
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(group),
                    static_cast<uint32_t>(group >> 32)};
  return std::mt19937_64(seq);
}

std::string Describe(const InformationUnit& u) {
  std::string out = u.parent_id + " [";
  for (size_t i = 0; i < u.span.ranges().size(); ++i) {
    const CharRange& r = u.span.ranges()[i];
    if (i > 0) out += ", ";
    out += "[" + std::to_string(r.start) + ", " + std::to_string(r.end) + "]";
  }
  return out + "]";
}

}  // namespace

std::vector<InformationUnit> DeriveSalience(const AlignmentSet& set) {
  std::map<UnitKey, InformationUnit> unique;
  for (const AlignmentPair& p : set.pairs()) {
    unique.try_emplace(KeyOf(p.doc_iu), p.doc_iu);
  }
  std::vector<InformationUnit> out;
  out.reserve(unique.size());
  for (auto& [key, unit] : unique) out.push_back(std::move(unit));
  return out;
}

std::vector<Cluster> DeriveClusters(const AlignmentSet& set) {
  std::map<UnitKey, std::pair<InformationUnit,
                              std::map<UnitKey, InformationUnit>>> groups;
  for (const AlignmentPair& p : set.pairs()) {
    auto [it, inserted] = groups.try_emplace(KeyOf(p.summary_iu));
    if (inserted) it->second.first = p.summary_iu;
    it->second.second.try_emplace(KeyOf(p.doc_iu), p.doc_iu);
  }
  std::vector<Cluster> out;
  out.reserve(groups.size());
  for (auto& [key, group] : groups) {
    Cluster c;
    c.cluster_id = set.topic_id() + "/c" + std::to_string(out.size());
    c.topic_id = set.topic_id();
    c.summary_iu = std::move(group.first);
    for (auto& [member_key, member] : group.second) {
      c.members.push_back(std::move(member));
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<SentencePlan> DeriveSentencePlans(
    const std::vector<Cluster>& clusters, const Topic& topic) {
  std::map<std::pair<std::string, int>, SentencePlan> plans;
  for (const Cluster& c : clusters) {
    const ParentText* summary = topic.FindSummary(c.summary_iu.parent_id);
    if (summary == nullptr) {
      throw IntegrityError("topic " + topic.id() + ": pivot " +
                           Describe(c.summary_iu) + " names no summary");
    }
    const int index = c.summary_iu.span.empty()
                          ? -1
                          : summary->SentenceIndexAt(c.summary_iu.span.begin());
    if (index < 0) {
      throw IntegrityError("topic " + topic.id() + ": pivot " +
                           Describe(c.summary_iu) +
                           " starts outside every summary sentence");
    }
    auto [it, inserted] = plans.try_emplace({summary->id(), index});
    SentencePlan& plan = it->second;
    if (inserted) {
      plan.topic_id = topic.id();
      plan.summary_id = summary->id();
      plan.sentence_index = index;
      plan.target = summary->sentences()[index].text;
    }
    plan.clusters.push_back(c);
  }
  std::vector<SentencePlan> out;
  out.reserve(plans.size());
  for (auto& [key, plan] : plans) out.push_back(std::move(plan));
  return out;
}

std::vector<FusionRecord> DeriveFusion(const std::vector<SentencePlan>& plans) {
  std::vector<FusionRecord> out;
  out.reserve(plans.size());
  for (const SentencePlan& plan : plans) {
    FusionRecord r;
    r.topic_id = plan.topic_id;
    r.summary_id = plan.summary_id;
    r.sentence_index = plan.sentence_index;
    r.target = plan.target;
    for (const Cluster& c : plan.clusters) {
      std::vector<std::string> surfaces;
      for (const InformationUnit& m : c.members) surfaces.push_back(m.surface);
      r.inputs.push_back(std::move(surfaces));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<OrderingRecord> DeriveOrdering(
    const std::vector<SentencePlan>& plans, uint64_t seed) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<SentencePlan>>
      groups;
  for (const SentencePlan& plan : plans) {
    auto [it, inserted] =
        groups.try_emplace({plan.topic_id, plan.summary_id});
    if (inserted) order.push_back(it->first);
    it->second.push_back(plan);
  }
  std::vector<OrderingRecord> out;
  out.reserve(order.size());
  for (size_t g = 0; g < order.size(); ++g) {
    std::vector<SentencePlan>& group = groups.at(order[g]);
    std::stable_sort(group.begin(), group.end(),
                     [](const SentencePlan& a, const SentencePlan& b) {
                       return a.sentence_index < b.sentence_index;
                     });
    const size_t n = group.size();
    std::vector<int> perm(n);  // perm[position] = summary rank
    for (size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    std::mt19937_64 rng = GroupRng(seed, g);
    for (size_t i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[rng() % i]);
    }
    OrderingRecord r;
    r.topic_id = order[g].first;
    r.summary_id = order[g].second;
    r.gold_permutation.assign(n, 0);
    for (size_t pos = 0; pos < n; ++pos) {
      r.items.push_back(group[perm[pos]]);
      r.gold_permutation[perm[pos]] = static_cast<int>(pos);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SentencePlan> Unshuffle(const OrderingRecord& record) {
  std::vector<SentencePlan> out;
  out.reserve(record.gold_permutation.size());
  for (int pos : record.gold_permutation) {
    if (pos < 0 || pos >= static_cast<int>(record.items.size())) {
      throw InvalidArgument("gold permutation index out of range");
    }
    out.push_back(record.items[pos]);
  }
  return out;
}

std::vector<TopicDerivation> DeriveDataset(
    const std::vector<AlignmentSet>& sets, const std::vector<Topic>& topics,
    uint64_t seed, Execution exec) {
  std::map<std::string, size_t> topic_index;
  for (size_t i = 0; i < topics.size(); ++i) topic_index[topics[i].id()] = i;
  std::vector<const AlignmentSet*> by_topic(topics.size(), nullptr);
  for (const AlignmentSet& set : sets) {
    auto it = topic_index.find(set.topic_id());
    if (it == topic_index.end()) {
      throw IntegrityError("alignments name unknown topic '" + set.topic_id() +
                           "'");
    }
    if (by_topic[it->second] != nullptr) {
      throw IntegrityError("topic '" + set.topic_id() +
                           "' has more than one alignment set");
    }
    by_topic[it->second] = &set;
  }
  std::vector<TopicDerivation> out(topics.size());
  ParallelFor(static_cast<long>(topics.size()), exec, [&](long i) {
    TopicDerivation& d = out[i];
    d.topic_id = topics[i].id();
    if (by_topic[i] == nullptr) return;
    const AlignmentSet& set = *by_topic[i];
    d.alignments = set.size();
    d.salience = DeriveSalience(set);
    d.clusters = DeriveClusters(set);
    d.plans = DeriveSentencePlans(d.clusters, topics[i]);
    d.fusion = DeriveFusion(d.plans);
    std::mt19937_64 rng = GroupRng(seed, static_cast<uint64_t>(i));
    d.ordering = DeriveOrdering(d.plans, rng());
  });
  return out;
}

MeanSd Summarize(const std::vector<double>& values) {
  MeanSd m;
  m.count = static_cast<long>(values.size());
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / values.size();
  double sq = 0.0;
  for (double v : values) sq += (v - m.mean) * (v - m.mean);
  m.sd = std::sqrt(sq / values.size());
  return m;
}

std::string FormatMeanSd(const MeanSd& m) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f (%.2f)", m.mean, m.sd);
  return buf;
}

DatasetStats ComputeStats(const std::vector<TopicDerivation>& derived) {
  DatasetStats s;
  std::vector<double> sizes;
  std::vector<double> per_sentence;
  for (const TopicDerivation& d : derived) {
    ++s.topics;
    s.alignments += static_cast<long>(d.alignments);
    s.salient_ius += static_cast<long>(d.salience.size());
    s.clusters += static_cast<long>(d.clusters.size());
    for (const Cluster& c : d.clusters) sizes.push_back(c.members.size());
    s.plans += static_cast<long>(d.plans.size());
    for (const SentencePlan& p : d.plans) {
      per_sentence.push_back(p.clusters.size());
    }
    s.fusion_records += static_cast<long>(d.fusion.size());
    s.ordering_records += static_cast<long>(d.ordering.size());
  }
  s.cluster_size = Summarize(sizes);
  s.clusters_per_sentence = Summarize(per_sentence);
  return s;
}

const ParentText* PyramidTopic::FindSystem(const std::string& id) const {
  for (const ParentText& s : systems) {
    if (s.id() == id) return &s;
  }
  return nullptr;
}

namespace {

void CheckSpan(const Span& span, const ParentText& parent,
               const std::string& what) {
  if (span.empty()) throw IntegrityError(what + ": empty span");
  if (span.end() > parent.size()) {
    throw IntegrityError(what + ": span exceeds '" + parent.id() + "'");
  }
}

struct TopicPyramid {
  AlignmentSet set;
  long emitted = 0;
  long skipped = 0;
};

TopicPyramid AlignPyramidTopic(const PyramidTopic& pt) {
  const Topic& topic = pt.topic;
  TopicPyramid out{AlignmentSet(topic.id())};
  std::map<std::pair<std::string, int>, std::vector<const ExtractiveLink*>>
      sources;
  for (const ExtractiveLink& e : pt.extractive) {
    const std::string what = "topic " + topic.id() + ": extractive link " +
                             e.system_id + "#" +
                             std::to_string(e.system_sentence);
    const ParentText* system = pt.FindSystem(e.system_id);
    const ParentText* doc = topic.FindDocument(e.doc_id);
    if (system == nullptr || doc == nullptr) {
      throw IntegrityError(what + " names an unknown text");
    }
    const int ns = static_cast<int>(system->sentences().size());
    const int nd = static_cast<int>(doc->sentences().size());
    if (e.system_sentence < 0 || e.system_sentence >= ns ||
        e.doc_sentence < 0 || e.doc_sentence >= nd) {
      throw IntegrityError(what + " has a sentence index out of range");
    }
    const Sentence& from = system->sentences()[e.system_sentence];
    const Sentence& to = doc->sentences()[e.doc_sentence];
    if (from.text != to.text) {
      throw IntegrityError(what + " does not match " + e.doc_id + "#" +
                           std::to_string(e.doc_sentence) + " verbatim");
    }
    sources[{e.system_id, e.system_sentence}].push_back(&e);
  }
  for (const ScuLink& link : pt.links) {
    const std::string what =
        "topic " + topic.id() + ": link " + link.scu_id;
    const ParentText* summary = topic.FindSummary(link.summary_id);
    const ParentText* system = pt.FindSystem(link.system_id);
    if (summary == nullptr || system == nullptr) {
      throw IntegrityError(what + " names an unknown text");
    }
    CheckSpan(link.summary_span, *summary, what);
    CheckSpan(link.system_span, *system, what);
    const InformationUnit summary_iu = MakeUnit(*summary, link.summary_span);
    for (const Sentence& s : system->sentences()) {
      const Span piece = Intersect(link.system_span, Span{s.range()});
      if (piece.empty()) continue;
      auto it = sources.find({system->id(), s.index});
      if (it == sources.end()) {
        ++out.skipped;
        continue;
      }
      for (const ExtractiveLink* e : it->second) {
        const ParentText& doc = *topic.FindDocument(e->doc_id);
        const CharIndex delta = doc.sentences()[e->doc_sentence].offset -
                                s.offset;
        std::vector<CharRange> shifted;
        for (const CharRange& r : piece.ranges()) {
          shifted.push_back({r.start + delta, r.end + delta});
        }
        AlignmentPair pair;
        pair.summary_iu = summary_iu;
        pair.doc_iu = MakeUnit(doc, Span(std::move(shifted)));
        pair.provenance = Provenance::kPyramidTransitive;
        if (out.set.Add(std::move(pair))) ++out.emitted;
      }
    }
  }
  return out;
}

}  // namespace

PyramidResult PyramidTransitiveAlign(const std::vector<PyramidTopic>& corpus,
                                     Execution exec) {
  std::vector<std::optional<TopicPyramid>> parts(corpus.size());
  ParallelFor(static_cast<long>(corpus.size()), exec,
              [&](long i) { parts[i] = AlignPyramidTopic(corpus[i]); });
  PyramidResult result;
  for (auto& part : parts) {
    result.emitted += part->emitted;
    result.skipped += part->skipped;
    result.sets.push_back(std::move(part->set));
  }
  return result;
}

std::string_view PairOriginName(PairOrigin origin) {
  switch (origin) {
    case PairOrigin::kJaccardPositive:
      return "jaccard_pos";
    case PairOrigin::kHardNegative:
      return "hard_neg_sim";
    case PairOrigin::kSameDocNegative:
      return "same_doc_neg";
  }
  return "unknown";
}

TrainingPairResult BuildTrainingPairs(
    const AlignmentSet& gold, const std::vector<InformationUnit>& summary_ius,
    const std::vector<InformationUnit>& doc_ius, PairScorer* scorer,
    const TrainingPairOptions& options, Execution exec) {
  const long ns = static_cast<long>(summary_ius.size());
  const long nd = static_cast<long>(doc_ius.size());
  std::vector<char> positive(static_cast<size_t>(ns * nd), 0);
  ParallelFor(ns, exec, [&](long i) {
    AlignmentPair candidate;
    candidate.summary_iu = summary_ius[i];
    for (long j = 0; j < nd; ++j) {
      candidate.doc_iu = doc_ius[j];
      for (const AlignmentPair& g : gold.pairs()) {
        if (JointJaccard(candidate, g) >= options.positive_threshold) {
          positive[i * nd + j] = 1;
          break;
        }
      }
    }
  });

  TrainingPairResult result;
  std::vector<char> hard(positive.size(), 0);
  if (scorer == nullptr) {
    result.hard_negatives_omitted = true;
    result.warning = "no scorer available; hard negatives omitted";
  } else {
    std::vector<TextPair> texts;
    std::vector<size_t> cells;
    for (long i = 0; i < ns; ++i) {
      for (long j = 0; j < nd; ++j) {
        if (positive[i * nd + j]) continue;
        texts.push_back({doc_ius[j].surface, summary_ius[i].surface});
        cells.push_back(static_cast<size_t>(i * nd + j));
      }
    }
    try {
      const std::vector<PairScores> scores =
          scorer->Score(texts, {ScoreKind::kSimilarity});
      for (size_t k = 0; k < cells.size(); ++k) {
        if (*scores[k].similarity > options.hard_negative_similarity) {
          hard[cells[k]] = 1;
        }
      }
    } catch (const ScorerError& e) {
      result.hard_negatives_omitted = true;
      result.warning =
          std::string("scorer failed; hard negatives omitted: ") + e.what();
    }
  }

  for (long i = 0; i < ns; ++i) {
    std::set<std::string> docs_with_positive;
    for (long j = 0; j < nd; ++j) {
      if (positive[i * nd + j]) docs_with_positive.insert(doc_ius[j].parent_id);
    }
    for (long j = 0; j < nd; ++j) {
      const size_t cell = static_cast<size_t>(i * nd + j);
      PairOrigin origin;
      if (positive[cell]) {
        origin = PairOrigin::kJaccardPositive;
      } else if (hard[cell]) {
        origin = PairOrigin::kHardNegative;
      } else if (docs_with_positive.count(doc_ius[j].parent_id) > 0) {
        origin = PairOrigin::kSameDocNegative;
      } else {
        continue;
      }
      result.pairs.push_back({gold.topic_id(), summary_ius[i], doc_ius[j],
                              origin == PairOrigin::kJaccardPositive, origin});
    }
  }
  return result;
}

}  // namespace spanalign
