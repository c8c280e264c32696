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

#ifndef SPANALIGN_ALIGNMENT_H_
#define SPANALIGN_ALIGNMENT_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "spanalign/corpus.h"

namespace spanalign {

enum class Provenance {
  kGold,
  kRougeIu,
  kSimEnsemble,
  kSupervised,
  kPyramidTransitive,
  kAnnotated,
  kRougeFull,
  kRougeSent,
};

std::string_view ProvenanceName(Provenance p);
// Throws InvalidArgument for unknown names.
Provenance ParseProvenance(std::string_view name);

struct AlignmentPair {
  InformationUnit summary_iu;
  InformationUnit doc_iu;
  std::optional<double> probability;
  Provenance provenance = Provenance::kGold;
};

// Pairs of one topic. Adding a pair whose spans equal an existing pair's on
// both sides is a no-op.
class AlignmentSet {
 public:
  AlignmentSet() = default;
  explicit AlignmentSet(std::string topic_id) : topic_id_(std::move(topic_id)) {}

  const std::string& topic_id() const { return topic_id_; }
  const std::vector<AlignmentPair>& pairs() const { return pairs_; }
  std::vector<AlignmentPair>& mutable_pairs() { return pairs_; }
  size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  // Returns false when an identical pair is already present.
  bool Add(AlignmentPair pair);

 private:
  using Key = std::tuple<std::string, Span, std::string, Span>;
  std::string topic_id_;
  std::vector<AlignmentPair> pairs_;
  std::set<Key> keys_;
};

}  // namespace spanalign

#endif  // SPANALIGN_ALIGNMENT_H_
