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

#include "spanalign/rouge.h"

#include <algorithm>

#include "spanalign/tokenizer.h"

namespace spanalign {
namespace {

RougeScore FromCounts(double overlap, size_t candidate_total,
                      size_t reference_total) {
  RougeScore s;
  s.empty_candidate = candidate_total == 0;
  s.empty_reference = reference_total == 0;
  if (!s.empty_candidate) s.precision = overlap / candidate_total;
  if (!s.empty_reference) s.recall = overlap / reference_total;
  if (s.precision > 0 && s.recall > 0) {
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

}  // namespace

RougeProfile::RougeProfile(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  for (size_t i = 0; i < tokens_.size(); ++i) {
    ++unigrams_[tokens_[i]];
    if (i + 1 < tokens_.size()) {
      // U+001F cannot occur inside a token.
      ++bigrams_[tokens_[i] + '\x1f' + tokens_[i + 1]];
    }
  }
}

RougeProfile RougeProfile::FromText(std::string_view utf8, bool stem) {
  return RougeProfile(RougeTokens(utf8, stem));
}

size_t RougeProfile::ngram_total(int n) const {
  return tokens_.size() >= static_cast<size_t>(n) ? tokens_.size() - n + 1 : 0;
}

size_t LcsLength(std::span<const std::string> a,
                 std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore Rouge(const RougeProfile& candidate, const RougeProfile& reference,
                 RougeVariant variant) {
  if (variant == RougeVariant::kRougeL) {
    const size_t lcs = LcsLength(candidate.tokens(), reference.tokens());
    return FromCounts(static_cast<double>(lcs), candidate.tokens().size(),
                      reference.tokens().size());
  }
  const int n = variant == RougeVariant::kRouge1 ? 1 : 2;
  const auto& cand = candidate.ngrams(n);
  const auto& ref = reference.ngrams(n);
  const auto& smaller = cand.size() <= ref.size() ? cand : ref;
  const auto& larger = cand.size() <= ref.size() ? ref : cand;
  long overlap = 0;
  for (const auto& [gram, count] : smaller) {
    auto it = larger.find(gram);
    if (it != larger.end()) overlap += std::min(count, it->second);
  }
  return FromCounts(static_cast<double>(overlap), candidate.ngram_total(n),
                    reference.ngram_total(n));
}

RougeScore Rouge(std::span<const std::string> candidate,
                 std::span<const std::string> reference,
                 RougeVariant variant) {
  return Rouge(RougeProfile({candidate.begin(), candidate.end()}),
               RougeProfile({reference.begin(), reference.end()}), variant);
}

double MeanRougeF1(const RougeProfile& candidate,
                   const RougeProfile& reference) {
  return (Rouge(candidate, reference, RougeVariant::kRouge1).f1 +
          Rouge(candidate, reference, RougeVariant::kRouge2).f1 +
          Rouge(candidate, reference, RougeVariant::kRougeL).f1) /
         3.0;
}

}  // namespace spanalign
