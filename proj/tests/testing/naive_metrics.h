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

// Brute-force reference for the alignment metrics. Spans become explicit
// sets of character positions and every quantity is recomputed from those
// sets with direct loops, sharing no code with the library kernels.

#ifndef SPANALIGN_TESTS_TESTING_NAIVE_METRICS_H_
#define SPANALIGN_TESTS_TESTING_NAIVE_METRICS_H_

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spanalign/alignment.h"

namespace spanalign::testing {

struct NaivePair {
  std::string summary_id;
  std::set<long> summary;
  std::string doc_id;
  std::set<long> doc;
};

inline std::set<long> Positions(const Span& span) {
  std::set<long> out;
  for (const CharRange& r : span.ranges()) {
    for (long i = r.start; i < r.end; ++i) out.insert(i);
  }
  return out;
}

inline std::vector<NaivePair> ToNaive(const AlignmentSet& set) {
  std::vector<NaivePair> out;
  for (const AlignmentPair& p : set.pairs()) {
    out.push_back({p.summary_iu.parent_id, Positions(p.summary_iu.span),
                   p.doc_iu.parent_id, Positions(p.doc_iu.span)});
  }
  return out;
}

inline long CountCommon(const std::set<long>& a, const std::set<long>& b) {
  long n = 0;
  for (long x : a) n += b.count(x);
  return n;
}

inline long CountEither(const std::set<long>& a, const std::set<long>& b) {
  std::set<long> u = a;
  u.insert(b.begin(), b.end());
  return static_cast<long>(u.size());
}

inline double NaiveJac(const std::set<long>& a, const std::set<long>& b) {
  return static_cast<double>(CountCommon(a, b)) /
         static_cast<double>(CountEither(a, b));
}

struct NaiveScores {
  double recall = 0, precision = 0, f1 = 0;
  double cojac_t = 0, cojac_p = 0;
  double coverage = 0, f1_cover = 0;
};

// Side-wise Jaccard; zero when the parents differ.
inline std::pair<double, double> NaiveSides(const NaivePair& a,
                                            const NaivePair& b) {
  const double r = a.summary_id == b.summary_id ? NaiveJac(a.summary, b.summary) : 0.0;
  const double d = a.doc_id == b.doc_id ? NaiveJac(a.doc, b.doc) : 0.0;
  return {r, d};
}

inline double NaiveJoint(const NaivePair& a, const NaivePair& b) {
  if (a.summary_id != b.summary_id || a.doc_id != b.doc_id) return 0.0;
  return static_cast<double>(CountCommon(a.summary, b.summary) +
                             CountCommon(a.doc, b.doc)) /
         static_cast<double>(CountEither(a.summary, b.summary) +
                             CountEither(a.doc, b.doc));
}

inline NaiveScores NaiveEvaluate(const AlignmentSet& predicted,
                                 const AlignmentSet& gold, double t) {
  const auto p = ToNaive(predicted);
  const auto g = ToNaive(gold);
  NaiveScores s;

  auto matched = [&](const NaivePair& a, const std::vector<NaivePair>& others) {
    for (const NaivePair& b : others) {
      auto [r, d] = NaiveSides(a, b);
      if (r >= t && d >= t) return true;
    }
    return false;
  };
  auto overlap_score = [&](const NaivePair& a,
                           const std::vector<NaivePair>& others) {
    bool all_below = true;
    for (const NaivePair& b : others) {
      auto [r, d] = NaiveSides(a, b);
      if (!(r < t && d < t)) all_below = false;
    }
    if (all_below) return 0.0;
    double best = 0.0;
    for (const NaivePair& b : others) best = std::max(best, NaiveJoint(a, b));
    return best;
  };

  int mp = 0, mg = 0;
  for (const auto& a : p) mp += matched(a, g);
  for (const auto& b : g) mg += matched(b, p);
  if (!p.empty()) s.precision = 100.0 * mp / static_cast<double>(p.size());
  if (!g.empty()) s.recall = 100.0 * mg / static_cast<double>(g.size());
  if (s.precision + s.recall > 0) {
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  }

  double sum = 0;
  int n = 0;
  for (const auto& a : p) {
    const double v = overlap_score(a, g);
    if (v > 0) {
      sum += v;
      ++n;
    }
  }
  if (n > 0) s.cojac_p = 100.0 * sum / n;
  sum = 0;
  n = 0;
  for (const auto& b : g) {
    const double v = overlap_score(b, p);
    if (v > 0) {
      sum += v;
      ++n;
    }
  }
  if (n > 0) s.cojac_t = 100.0 * sum / n;

  std::vector<std::pair<std::string, std::set<long>>> units;
  for (const auto& b : g) {
    std::pair<std::string, std::set<long>> key{b.summary_id, b.summary};
    if (std::find(units.begin(), units.end(), key) == units.end()) {
      units.push_back(key);
    }
  }
  int covered = 0;
  for (const auto& [id, positions] : units) {
    for (const auto& a : p) {
      if (a.summary_id == id && NaiveJac(a.summary, positions) >= t) {
        ++covered;
        break;
      }
    }
  }
  if (!units.empty()) {
    s.coverage = 100.0 * covered / static_cast<double>(units.size());
  }
  if (s.coverage + s.precision > 0) {
    s.f1_cover = 2 * s.coverage * s.precision / (s.coverage + s.precision);
  }
  return s;
}

}  // namespace spanalign::testing

#endif  // SPANALIGN_TESTS_TESTING_NAIVE_METRICS_H_
