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

#include "spanalign/filtering.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "spanalign/alignment_metrics.h"
#include "spanalign/errors.h"
#include "spanalign/rouge.h"

namespace spanalign {
namespace {

struct Evaluation {
  double reduction = 0.0;
  double recall = 0.0;
};

// keep[i] marks surviving candidates.
Evaluation Evaluate(const std::vector<char>& keep,
                    const std::vector<std::vector<size_t>>& recoverers) {
  size_t kept = 0;
  for (char k : keep) kept += k ? 1 : 0;
  size_t recovered = 0;
  for (const auto& r : recoverers) {
    for (size_t c : r) {
      if (keep[c]) {
        ++recovered;
        break;
      }
    }
  }
  Evaluation e;
  e.reduction = keep.empty() ? 0.0
                             : 100.0 * static_cast<double>(keep.size() - kept) /
                                   static_cast<double>(keep.size());
  e.recall = recoverers.empty() ? 100.0
                                : 100.0 * static_cast<double>(recovered) /
                                      static_cast<double>(recoverers.size());
  return e;
}

bool Better(const Evaluation& a, const Evaluation& b, double target) {
  const bool fa = a.recall >= target, fb = b.recall >= target;
  if (fa != fb) return fa;
  if (!fa) return a.recall > b.recall;
  if (a.reduction != b.reduction) return a.reduction > b.reduction;
  return a.recall > b.recall;
}

}  // namespace

double Rouge1Precision(const std::string& iu_text, const std::string& sentence) {
  return Rouge(RougeProfile::FromText(iu_text, /*stem=*/true),
               RougeProfile::FromText(sentence, /*stem=*/true),
               RougeVariant::kRouge1)
      .precision;
}

std::vector<CandidateScore> ScoreCandidates(
    const std::vector<InformationUnit>& ius,
    const std::vector<Sentence>& sentences, PairScorer& scorer,
    Execution execution) {
  const size_t n = ius.size(), m = sentences.size();
  std::vector<CandidateScore> out(n * m);
  if (out.empty()) return out;

  std::vector<RougeProfile> iu_profiles(n), sentence_profiles(m);
  for (size_t i = 0; i < n; ++i) {
    iu_profiles[i] = RougeProfile::FromText(ius[i].surface, true);
  }
  for (size_t j = 0; j < m; ++j) {
    sentence_profiles[j] = RougeProfile::FromText(sentences[j].text, true);
  }
  const long rows = static_cast<long>(n);
  auto fill_row = [&](long i) {
    for (size_t j = 0; j < m; ++j) {
      CandidateScore& c = out[i * m + j];
      c.iu = i;
      c.sentence = j;
      c.rouge1_precision =
          Rouge(iu_profiles[i], sentence_profiles[j], RougeVariant::kRouge1)
              .precision;
    }
  };
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < rows; ++i) fill_row(i);
  } else {
    for (long i = 0; i < rows; ++i) fill_row(i);
  }

  std::map<TextPair, size_t> unique;
  std::vector<TextPair> requests;
  std::vector<size_t> request_of(out.size());
  for (size_t c = 0; c < out.size(); ++c) {
    TextPair p{sentences[out[c].sentence].text, ius[out[c].iu].surface};
    auto [it, inserted] = unique.emplace(p, requests.size());
    if (inserted) requests.push_back(std::move(p));
    request_of[c] = it->second;
  }
  const std::vector<ScoreKind> kinds = {ScoreKind::kSimilarity,
                                        ScoreKind::kEntailment};
  const std::vector<PairScores> replies = scorer.Score(requests, kinds);
  if (replies.size() != requests.size()) {
    throw ScorerError("scorer returned " + std::to_string(replies.size()) +
                      " results for " + std::to_string(requests.size()) +
                      " pairs");
  }
  for (const PairScores& r : replies) ValidateScores(r, kinds, "scorer");
  for (size_t c = 0; c < out.size(); ++c) {
    out[c].similarity = *replies[request_of[c]].similarity;
    out[c].entailment = *replies[request_of[c]].entailment;
  }
  return out;
}

std::vector<CandidateScore> AutomaticFilter(
    const std::vector<CandidateScore>& scores, const FilterPolicy& policy) {
  std::vector<CandidateScore> out;
  for (const CandidateScore& s : scores) {
    if (policy.Keep(s)) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<size_t>> GoldRecoverers(
    const std::vector<CandidateScore>& scores,
    const std::vector<InformationUnit>& ius,
    const std::vector<Sentence>& sentences, const AlignmentSet& gold,
    double threshold) {
  std::vector<std::vector<size_t>> out(gold.size());
  for (size_t g = 0; g < gold.size(); ++g) {
    const AlignmentPair& pair = gold.pairs()[g];
    for (size_t c = 0; c < scores.size(); ++c) {
      const InformationUnit& iu = ius[scores[c].iu];
      const Sentence& s = sentences[scores[c].sentence];
      if (iu.parent_id != pair.summary_iu.parent_id ||
          s.parent_id != pair.doc_iu.parent_id) {
        continue;
      }
      if (IntersectionLength(pair.doc_iu.span, Span{s.range()}) == 0) continue;
      if (CharJaccard(iu.span, pair.summary_iu.span) < threshold) continue;
      out[g].push_back(c);
    }
  }
  return out;
}

FilterDiagnostics Diagnose(const std::vector<CandidateScore>& scores,
                           const std::vector<InformationUnit>& ius,
                           const std::vector<Sentence>& sentences,
                           const FilterPolicy& policy,
                           const AlignmentSet* gold, double threshold) {
  std::vector<char> keep(scores.size());
  for (size_t c = 0; c < scores.size(); ++c) keep[c] = policy.Keep(scores[c]);
  FilterDiagnostics d;
  d.total = scores.size();
  d.kept = static_cast<size_t>(std::count(keep.begin(), keep.end(), 1));
  std::vector<std::vector<size_t>> recoverers;
  if (gold != nullptr) {
    recoverers = GoldRecoverers(scores, ius, sentences, *gold, threshold);
    d.gold_pairs = gold->size();
  }
  const Evaluation e = Evaluate(keep, recoverers);
  d.reduction = e.reduction;
  if (gold != nullptr) d.recall = e.recall;
  return d;
}

std::vector<size_t> TopCandidates(size_t iu,
                                  const std::vector<CandidateScore>& scores,
                                  const std::vector<Sentence>& sentences,
                                  size_t k) {
  std::vector<const CandidateScore*> mine;
  for (const CandidateScore& s : scores) {
    if (s.iu == iu) mine.push_back(&s);
  }
  std::sort(mine.begin(), mine.end(),
            [&](const CandidateScore* a, const CandidateScore* b) {
              const double pa = a->Product(), pb = b->Product();
              if (pa != pb) return pa > pb;
              const Sentence& sa = sentences[a->sentence];
              const Sentence& sb = sentences[b->sentence];
              return std::tie(sa.parent_id, sa.index) <
                     std::tie(sb.parent_id, sb.index);
            });
  std::vector<size_t> out;
  for (size_t i = 0; i < mine.size() && i < k; ++i) {
    out.push_back(mine[i]->sentence);
  }
  return out;
}

CalibrationResult Calibrate(const std::vector<CandidateScore>& scores,
                            const std::vector<InformationUnit>& ius,
                            const std::vector<Sentence>& sentences,
                            const AlignmentSet& gold, double recall_target,
                            double threshold, std::vector<double> grid,
                            Execution execution) {
  if (grid.empty()) {
    for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
    grid.push_back(1.01);
  }
  const auto recoverers =
      GoldRecoverers(scores, ius, sentences, gold, threshold);
  const size_t g = grid.size();
  const long points = static_cast<long>(g * g * g);
  std::vector<Evaluation> results(points);
  auto policy_at = [&](long p) {
    return FilterPolicy{grid[p / (g * g)], grid[(p / g) % g], grid[p % g]};
  };
  auto run = [&](long p) {
    const FilterPolicy policy = policy_at(p);
    std::vector<char> keep(scores.size());
    for (size_t c = 0; c < scores.size(); ++c) keep[c] = policy.Keep(scores[c]);
    results[p] = Evaluate(keep, recoverers);
  };
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long p = 0; p < points; ++p) run(p);
  } else {
    for (long p = 0; p < points; ++p) run(p);
  }
  long best = 0;
  for (long p = 1; p < points; ++p) {
    if (Better(results[p], results[best], recall_target)) best = p;
  }
  CalibrationResult out;
  out.policy = policy_at(best);
  out.reduction = results[best].reduction;
  out.recall = results[best].recall;
  out.feasible = results[best].recall >= recall_target;
  return out;
}

}  // namespace spanalign
