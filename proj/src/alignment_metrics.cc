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

#include "spanalign/alignment_metrics.h"

#include <algorithm>
#include <map>
#include <string>

#include "spanalign/errors.h"

namespace spanalign {
namespace {

// A pair reduced to interned parent ids and its two spans.
struct Side {
  int summary_parent;
  int doc_parent;
  const Span* summary;
  const Span* doc;
};

class Interner {
 public:
  int Id(const std::string& s) {
    return ids_.try_emplace(s, static_cast<int>(ids_.size())).first->second;
  }

 private:
  std::map<std::string, int> ids_;
};

std::vector<Side> Reduce(const AlignmentSet& set, Interner& interner) {
  std::vector<Side> out;
  out.reserve(set.size());
  for (const AlignmentPair& p : set.pairs()) {
    out.push_back({interner.Id(p.summary_iu.parent_id),
                   interner.Id(p.doc_iu.parent_id), &p.summary_iu.span,
                   &p.doc_iu.span});
  }
  return out;
}

struct RowResult {
  bool matched = false;
  double cojac = 0.0;
};

// Scores one pair against every pair on the other side.
RowResult ScoreRow(const Side& a, const std::vector<Side>& others,
                   double threshold) {
  RowResult row;
  bool gated = false;
  double best_joint = 0.0;
  for (const Side& b : others) {
    const bool same_summary = a.summary_parent == b.summary_parent;
    const bool same_doc = a.doc_parent == b.doc_parent;
    if (!same_summary && !same_doc) continue;
    CharIndex inter_r = 0, union_r = 0, inter_d = 0, union_d = 0;
    double jac_r = 0.0, jac_d = 0.0;
    if (same_summary) {
      inter_r = IntersectionLength(*a.summary, *b.summary);
      union_r = a.summary->length() + b.summary->length() - inter_r;
      jac_r = static_cast<double>(inter_r) / static_cast<double>(union_r);
    }
    if (same_doc) {
      inter_d = IntersectionLength(*a.doc, *b.doc);
      union_d = a.doc->length() + b.doc->length() - inter_d;
      jac_d = static_cast<double>(inter_d) / static_cast<double>(union_d);
    }
    if (jac_r >= threshold && jac_d >= threshold) row.matched = true;
    if (jac_r >= threshold || jac_d >= threshold) gated = true;
    if (same_summary && same_doc) {
      const double joint = static_cast<double>(inter_r + inter_d) /
                           static_cast<double>(union_r + union_d);
      best_joint = std::max(best_joint, joint);
    }
  }
  row.cojac = gated ? best_joint : 0.0;
  return row;
}

void ScoreRows(const std::vector<Side>& rows, const std::vector<Side>& others,
               double threshold, Execution execution,
               std::vector<char>& matched, std::vector<double>& cojac) {
  const long n = static_cast<long>(rows.size());
  matched.assign(n, 0);
  cojac.assign(n, 0.0);
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
      const RowResult r = ScoreRow(rows[i], others, threshold);
      matched[i] = r.matched;
      cojac[i] = r.cojac;
    }
  } else {
    for (long i = 0; i < n; ++i) {
      const RowResult r = ScoreRow(rows[i], others, threshold);
      matched[i] = r.matched;
      cojac[i] = r.cojac;
    }
  }
}

void CheckThreshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("threshold must lie in (0, 1], got " +
                          std::to_string(threshold));
  }
}

double Harmonic(double a, double b) {
  return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0;
}

}  // namespace

double CharJaccard(const Span& a, const Span& b) {
  const CharIndex inter = IntersectionLength(a, b);
  const CharIndex uni = a.length() + b.length() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double CharJaccard(const InformationUnit& a, const InformationUnit& b) {
  if (a.parent_id != b.parent_id) {
    throw InvalidArgument("Jaccard of units in different texts '" +
                          a.parent_id + "' and '" + b.parent_id + "'");
  }
  return CharJaccard(a.span, b.span);
}

double JointJaccard(const AlignmentPair& p, const AlignmentPair& t) {
  if (p.summary_iu.parent_id != t.summary_iu.parent_id ||
      p.doc_iu.parent_id != t.doc_iu.parent_id) {
    return 0.0;
  }
  const CharIndex inter_r = IntersectionLength(p.summary_iu.span,
                                               t.summary_iu.span);
  const CharIndex inter_d = IntersectionLength(p.doc_iu.span, t.doc_iu.span);
  const CharIndex union_r =
      p.summary_iu.span.length() + t.summary_iu.span.length() - inter_r;
  const CharIndex union_d =
      p.doc_iu.span.length() + t.doc_iu.span.length() - inter_d;
  if (union_r + union_d == 0) return 1.0;
  return static_cast<double>(inter_r + inter_d) /
         static_cast<double>(union_r + union_d);
}

MetricTally& MetricTally::operator+=(const MetricTally& o) {
  predicted += o.predicted;
  gold += o.gold;
  matched_predicted += o.matched_predicted;
  matched_gold += o.matched_gold;
  cojac_p_sum += o.cojac_p_sum;
  cojac_p_count += o.cojac_p_count;
  cojac_t_sum += o.cojac_t_sum;
  cojac_t_count += o.cojac_t_count;
  gold_summary_units += o.gold_summary_units;
  covered_summary_units += o.covered_summary_units;
  return *this;
}

PairwiseScores ScorePairs(const AlignmentSet& predicted,
                          const AlignmentSet& gold, double threshold,
                          Execution execution) {
  CheckThreshold(threshold);
  Interner interner;
  const std::vector<Side> p = Reduce(predicted, interner);
  const std::vector<Side> t = Reduce(gold, interner);
  PairwiseScores out;
  ScoreRows(p, t, threshold, execution, out.predicted_matched,
            out.predicted_cojac);
  ScoreRows(t, p, threshold, execution, out.gold_matched, out.gold_cojac);

  std::vector<std::pair<int, const Span*>> units;
  {
    std::map<std::pair<int, Span>, bool> seen;
    for (const Side& s : t) {
      if (seen.try_emplace({s.summary_parent, *s.summary}, true).second) {
        units.emplace_back(s.summary_parent, s.summary);
      }
    }
  }
  const long u = static_cast<long>(units.size());
  out.summary_unit_covered.assign(u, 0);
  auto covered = [&](long k) {
    for (const Side& s : p) {
      if (s.summary_parent == units[k].first &&
          CharJaccard(*s.summary, *units[k].second) >= threshold) {
        return true;
      }
    }
    return false;
  };
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long k = 0; k < u; ++k) out.summary_unit_covered[k] = covered(k);
  } else {
    for (long k = 0; k < u; ++k) out.summary_unit_covered[k] = covered(k);
  }
  return out;
}

MetricTally Tally(const PairwiseScores& s) {
  MetricTally tally;
  tally.predicted = static_cast<long>(s.predicted_matched.size());
  tally.gold = static_cast<long>(s.gold_matched.size());
  for (char m : s.predicted_matched) tally.matched_predicted += m;
  for (char m : s.gold_matched) tally.matched_gold += m;
  for (double v : s.predicted_cojac) {
    if (v > 0.0) {
      tally.cojac_p_sum += v;
      ++tally.cojac_p_count;
    }
  }
  for (double v : s.gold_cojac) {
    if (v > 0.0) {
      tally.cojac_t_sum += v;
      ++tally.cojac_t_count;
    }
  }
  tally.gold_summary_units = static_cast<long>(s.summary_unit_covered.size());
  for (char c : s.summary_unit_covered) tally.covered_summary_units += c;
  return tally;
}

MetricTally TallyTopic(const AlignmentSet& predicted, const AlignmentSet& gold,
                       double threshold, Execution execution) {
  return Tally(ScorePairs(predicted, gold, threshold, execution));
}

MatchScores MatchFromTally(const MetricTally& t, double threshold) {
  MatchScores m;
  m.threshold = threshold;
  m.precision_undefined = t.predicted == 0;
  m.recall_undefined = t.gold == 0;
  if (t.predicted > 0) {
    m.precision = 100.0 * static_cast<double>(t.matched_predicted) /
                  static_cast<double>(t.predicted);
  }
  if (t.gold > 0) {
    m.recall = 100.0 * static_cast<double>(t.matched_gold) /
               static_cast<double>(t.gold);
  }
  m.f1 = Harmonic(m.recall, m.precision);
  return m;
}

CoJacScores CoJacFromTally(const MetricTally& t, double threshold) {
  CoJacScores c;
  c.threshold = threshold;
  c.p_empty = t.cojac_p_count == 0;
  c.t_empty = t.cojac_t_count == 0;
  if (!c.p_empty) c.cojac_p = 100.0 * t.cojac_p_sum / t.cojac_p_count;
  if (!c.t_empty) c.cojac_t = 100.0 * t.cojac_t_sum / t.cojac_t_count;
  return c;
}

CoverageScores CoverageFromTally(const MetricTally& t, double threshold) {
  CoverageScores c;
  c.threshold = threshold;
  c.undefined = t.gold_summary_units == 0;
  if (!c.undefined) {
    c.coverage = 100.0 * static_cast<double>(t.covered_summary_units) /
                 static_cast<double>(t.gold_summary_units);
  }
  c.f1_cover = Harmonic(c.coverage, MatchFromTally(t, threshold).precision);
  return c;
}

MatchScores ExtendedRecallPrecision(const AlignmentSet& predicted,
                                    const AlignmentSet& gold,
                                    double threshold) {
  return MatchFromTally(TallyTopic(predicted, gold, threshold), threshold);
}

CoJacScores CoJac(const AlignmentSet& predicted, const AlignmentSet& gold,
                  double threshold) {
  return CoJacFromTally(TallyTopic(predicted, gold, threshold), threshold);
}

CoverageScores Coverage(const AlignmentSet& predicted, const AlignmentSet& gold,
                        double threshold) {
  return CoverageFromTally(TallyTopic(predicted, gold, threshold), threshold);
}

EvaluationReport Evaluate(const std::vector<AlignmentSet>& predicted,
                          const std::vector<AlignmentSet>& gold,
                          double threshold, Execution execution) {
  CheckThreshold(threshold);
  std::map<std::string, const AlignmentSet*> by_topic;
  for (const AlignmentSet& g : gold) by_topic.emplace(g.topic_id(), &g);
  std::map<std::string, const AlignmentSet*> predicted_topics;
  for (const AlignmentSet& p : predicted) {
    predicted_topics.emplace(p.topic_id(), &p);
  }
  const AlignmentSet empty;
  EvaluationReport report;
  for (const AlignmentSet& p : predicted) {
    auto it = by_topic.find(p.topic_id());
    const AlignmentSet& g = it == by_topic.end() ? empty : *it->second;
    report.tally += TallyTopic(p, g, threshold, execution);
  }
  for (const AlignmentSet& g : gold) {
    if (predicted_topics.count(g.topic_id()) == 0) {
      report.tally += TallyTopic(empty, g, threshold, execution);
    }
  }
  report.match = MatchFromTally(report.tally, threshold);
  report.cojac = CoJacFromTally(report.tally, threshold);
  report.coverage = CoverageFromTally(report.tally, threshold);
  return report;
}

}  // namespace spanalign
