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

#ifndef SPANALIGN_SENTENCE_SPLITTER_H_
#define SPANALIGN_SENTENCE_SPLITTER_H_

#include <string>
#include <string_view>
#include <vector>

#include "spanalign/corpus.h"

namespace spanalign {

// Rule-based splitter. A boundary follows terminal punctuation (. ! ?),
// optionally trailed by closing quotes or brackets, when the next non-space
// character does not start with a lowercase letter and the token before a
// period is not a known abbreviation or dotted acronym. Blank lines are
// boundaries too. Sentences exclude surrounding whitespace, so slicing the
// parent at each sentence's range gives back its text.
std::vector<Sentence> SplitSentences(std::u32string_view text,
                                     std::string_view parent_id = "");

}  // namespace spanalign

#endif  // SPANALIGN_SENTENCE_SPLITTER_H_
