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

#include "spanalign/salience_eval.h"

#include <map>
#include <set>
#include <string>

#include "spanalign/tokenizer.h"
#include "spanalign/utf8.h"

namespace spanalign {

SalienceScores SentenceSalienceEval(const std::vector<Sentence>& selected,
                                    const AlignmentSet& gold,
                                    double threshold) {
  SalienceScores s;
  s.empty_selection = selected.empty();
  s.empty_gold = gold.empty();

  std::map<std::string, std::vector<CharRange>> gold_ranges;
  for (const AlignmentPair& p : gold.pairs()) {
    auto& ranges = gold_ranges[p.doc_iu.parent_id];
    ranges.insert(ranges.end(), p.doc_iu.span.ranges().begin(),
                  p.doc_iu.span.ranges().end());
  }
  std::map<std::string, Span> salient;
  for (auto& [doc, ranges] : gold_ranges) salient.emplace(doc, Span(ranges));

  for (const Sentence& sentence : selected) {
    auto it = salient.find(sentence.parent_id);
    for (const Token& t : Tokenize(DecodeUtf8(sentence.text), sentence.offset)) {
      ++s.selected_tokens;
      if (it != salient.end() &&
          IntersectionLength(Span{{t.start, t.end}}, it->second) ==
              t.end - t.start) {
        ++s.salient_tokens;
      }
    }
  }

  std::map<std::pair<std::string, Span>, bool> reached;
  for (const AlignmentPair& p : gold.pairs()) {
    bool& hit = reached[{p.summary_iu.parent_id, p.summary_iu.span}];
    if (hit) continue;
    for (const Sentence& sentence : selected) {
      if (sentence.parent_id != p.doc_iu.parent_id) continue;
      const CharIndex inside =
          IntersectionLength(p.doc_iu.span, Span{sentence.range()});
      if (static_cast<double>(inside) /
              static_cast<double>(p.doc_iu.span.length()) >=
          threshold) {
        hit = true;
        break;
      }
    }
  }
  s.gold_summary_units = static_cast<long>(reached.size());
  for (const auto& [key, hit] : reached) s.covered_summary_units += hit;

  if (s.selected_tokens > 0) {
    s.token_precision = 100.0 * static_cast<double>(s.salient_tokens) /
                        static_cast<double>(s.selected_tokens);
  }
  if (s.gold_summary_units > 0) {
    s.iu_recall = 100.0 * static_cast<double>(s.covered_summary_units) /
                  static_cast<double>(s.gold_summary_units);
  }
  if (s.token_precision + s.iu_recall > 0) {
    s.f1 = 2 * s.token_precision * s.iu_recall /
           (s.token_precision + s.iu_recall);
  }
  return s;
}

}  // namespace spanalign
