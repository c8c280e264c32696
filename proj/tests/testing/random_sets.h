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

#ifndef SPANALIGN_TESTS_TESTING_RANDOM_SETS_H_
#define SPANALIGN_TESTS_TESTING_RANDOM_SETS_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "spanalign/alignment.h"

namespace spanalign::testing {

// Random span of 1-3 ranges inside [0, text_length).
inline Span RandomSpan(std::mt19937_64& rng, long text_length) {
  std::uniform_int_distribution<int> pieces(1, 3);
  std::vector<CharRange> ranges;
  const int k = pieces(rng);
  for (int i = 0; i < k; ++i) {
    const long a = static_cast<long>(rng() % text_length);
    const long len = 1 + static_cast<long>(rng() % 40);
    ranges.push_back({a, std::min(text_length, a + len)});
  }
  return Span(std::move(ranges));
}

// Small random alignment set over two summaries and three documents, text
// length <= 200. Parent ids are drawn from a small pool so that matches
// across sets happen often.
inline AlignmentSet RandomSet(std::mt19937_64& rng, int max_pairs = 10,
                              long text_length = 200) {
  AlignmentSet set("t");
  const int n = static_cast<int>(rng() % (max_pairs + 1));
  for (int i = 0; i < n; ++i) {
    AlignmentPair p;
    p.summary_iu.parent_id = "s" + std::to_string(rng() % 2);
    p.doc_iu.parent_id = "d" + std::to_string(rng() % 3);
    p.summary_iu.span = RandomSpan(rng, text_length);
    p.doc_iu.span = RandomSpan(rng, text_length);
    set.Add(std::move(p));
  }
  return set;
}

// Perturbs spans of a set by a few characters so that sets overlap without
// being equal.
inline AlignmentSet Jitter(std::mt19937_64& rng, const AlignmentSet& in,
                           long text_length = 200) {
  AlignmentSet out(in.topic_id());
  auto shift = [&](const Span& s) {
    std::vector<CharRange> ranges;
    for (const CharRange& r : s.ranges()) {
      const long d1 = static_cast<long>(rng() % 9) - 4;
      const long d2 = static_cast<long>(rng() % 9) - 4;
      long a = std::clamp(r.start + d1, 0L, text_length - 1);
      long b = std::clamp(r.end + d2, a + 1, text_length);
      ranges.push_back({a, b});
    }
    return Span(std::move(ranges));
  };
  for (const AlignmentPair& p : in.pairs()) {
    if (rng() % 5 == 0) continue;
    AlignmentPair q = p;
    q.summary_iu.span = shift(p.summary_iu.span);
    q.doc_iu.span = shift(p.doc_iu.span);
    out.Add(std::move(q));
  }
  return out;
}

inline AlignmentPair MakePair(const std::string& summary_id, Span summary,
                              const std::string& doc_id, Span doc) {
  AlignmentPair p;
  p.summary_iu.parent_id = summary_id;
  p.summary_iu.span = std::move(summary);
  p.doc_iu.parent_id = doc_id;
  p.doc_iu.span = std::move(doc);
  return p;
}

}  // namespace spanalign::testing

#endif  // SPANALIGN_TESTS_TESTING_RANDOM_SETS_H_
