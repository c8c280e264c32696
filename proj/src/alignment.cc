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

#include "spanalign/alignment.h"

#include <array>
#include <utility>

#include "spanalign/errors.h"

namespace spanalign {
namespace {

constexpr std::array<std::pair<Provenance, std::string_view>, 8> kNames = {{
    {Provenance::kGold, "gold"},
    {Provenance::kRougeIu, "rouge_iu"},
    {Provenance::kSimEnsemble, "sim_ensemble"},
    {Provenance::kSupervised, "supervised"},
    {Provenance::kPyramidTransitive, "pyramid_transitive"},
    {Provenance::kAnnotated, "annotated"},
    {Provenance::kRougeFull, "rouge_full"},
    {Provenance::kRougeSent, "rouge_sent"},
}};

}  // namespace

std::string_view ProvenanceName(Provenance p) {
  for (const auto& [value, name] : kNames) {
    if (value == p) return name;
  }
  return "unknown";
}

Provenance ParseProvenance(std::string_view name) {
  for (const auto& [value, n] : kNames) {
    if (n == name) return value;
  }
  throw InvalidArgument("unknown provenance '" + std::string(name) + "'");
}

bool AlignmentSet::Add(AlignmentPair pair) {
  Key key{pair.summary_iu.parent_id, pair.summary_iu.span,
          pair.doc_iu.parent_id, pair.doc_iu.span};
  if (!keys_.insert(std::move(key)).second) return false;
  pairs_.push_back(std::move(pair));
  return true;
}

}  // namespace spanalign
