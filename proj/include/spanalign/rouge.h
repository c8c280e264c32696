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

#ifndef SPANALIGN_ROUGE_H_
#define SPANALIGN_ROUGE_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spanalign {

enum class RougeVariant { kRouge1, kRouge2, kRougeL };

// Scores in [0, 1]. When the candidate (reference) has no n-grams of the
// requested order, precision (recall) is 0 and the matching flag is set.
struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  bool empty_reference = false;
  bool empty_candidate = false;
};

// Token sequence with its unigram and bigram counts, built once and scored
// against many others.
class RougeProfile {
 public:
  RougeProfile() = default;
  explicit RougeProfile(std::vector<std::string> tokens);
  // Tokenizes with RougeTokens.
  static RougeProfile FromText(std::string_view utf8, bool stem = false);

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::unordered_map<std::string, int>& ngrams(int n) const {
    return n == 1 ? unigrams_ : bigrams_;
  }
  size_t ngram_total(int n) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> unigrams_;
  std::unordered_map<std::string, int> bigrams_;
};

RougeScore Rouge(const RougeProfile& candidate, const RougeProfile& reference,
                 RougeVariant variant);
RougeScore Rouge(std::span<const std::string> candidate,
                 std::span<const std::string> reference, RougeVariant variant);

// Mean of the ROUGE-1, ROUGE-2 and ROUGE-L F1 scores.
double MeanRougeF1(const RougeProfile& candidate, const RougeProfile& reference);

// Length of the longest common subsequence.
size_t LcsLength(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace spanalign

#endif  // SPANALIGN_ROUGE_H_
