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

#ifndef SPANALIGN_TESTS_TESTING_PLANTED_H_
#define SPANALIGN_TESTS_TESTING_PLANTED_H_

#include <algorithm>
#include <random>
#include <vector>

#include "spanalign/aggregation.h"

namespace spanalign::testing {

struct PlantedMatrix {
  Matrix similarity;
  std::vector<int> block;  // planted block of each point
};

// Planted partition: blocks groups of one common size in 2..max_size;
// within-block similarity 0.9 and across 0.1, each perturbed by up to
// +-noise, points shuffled.
inline PlantedMatrix PlantedBlocks(std::mt19937_64& rng, int blocks,
                                   int max_size = 6, double noise = 0.05) {
  std::vector<int> block;
  const int size = 2 + static_cast<int>(rng() % (max_size - 1));
  for (int b = 0; b < blocks; ++b) {
    for (int i = 0; i < size; ++i) block.push_back(b);
  }
  std::shuffle(block.begin(), block.end(), rng);
  const size_t n = block.size();
  std::uniform_real_distribution<double> jitter(-noise, noise);
  Matrix s(n, std::vector<double>(n, 1.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      s[i][j] = s[j][i] = (block[i] == block[j] ? 0.9 : 0.1) + jitter(rng);
    }
  }
  return {std::move(s), std::move(block)};
}

// True when labels and blocks induce the same partition.
inline bool SamePartition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

}  // namespace spanalign::testing

#endif  // SPANALIGN_TESTS_TESTING_PLANTED_H_
