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

#ifndef SPANALIGN_TOKENIZER_H_
#define SPANALIGN_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

#include "spanalign/span.h"

namespace spanalign {

struct Token {
  std::string raw;    // as written
  std::string lower;  // lowercased
  CharIndex start = 0;
  CharIndex end = 0;
  bool is_word = true;
};

// Word tokens are maximal runs of word characters, joined across an
// apostrophe between letters ("don't") and across '.' or ',' between digits
// ("3.5", "1,000"). With keep_punctuation each remaining non-space
// character becomes its own token with is_word = false. Offsets are
// relative to text plus base.
std::vector<Token> Tokenize(std::u32string_view text, CharIndex base = 0,
                            bool keep_punctuation = false);

// Lowercased word tokens of a UTF-8 string, optionally Porter-stemmed.
// This is the tokenizer behind every ROUGE computation.
std::vector<std::string> RougeTokens(std::string_view utf8, bool stem = false);

// Porter (1980) suffix stripping. Words with non-ASCII letters and words of
// length <= 2 are returned unchanged. Expects lowercase input.
std::string PorterStem(std::string_view word);

}  // namespace spanalign

#endif  // SPANALIGN_TOKENIZER_H_
