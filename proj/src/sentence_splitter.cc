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

#include "spanalign/sentence_splitter.h"

#include <array>
#include <string>

#include "spanalign/char_class.h"
#include "spanalign/utf8.h"

namespace spanalign {
namespace {

constexpr std::array<std::u32string_view, 44> kAbbreviations = {
    U"mr",   U"mrs",  U"ms",  U"dr",   U"prof", U"sr",  U"jr",   U"st",
    U"vs",   U"etc",  U"inc", U"ltd",  U"co",   U"corp", U"gen", U"gov",
    U"sen",  U"rep",  U"lt",  U"col",  U"sgt",  U"capt", U"mt",  U"no",
    U"jan",  U"feb",  U"mar", U"apr",  U"jun",  U"jul",  U"aug", U"sep",
    U"sept", U"oct",  U"nov", U"dec",  U"fig",  U"approx", U"dept",
    U"est",  U"ft",   U"rev", U"hon",  U"messrs"};

bool IsTerminal(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool IsClosing(char32_t c) {
  switch (c) {
    case U'"':
    case U'\'':
    case U')':
    case U']':
    case U'}':
    case 0x2019:  // right single quote
    case 0x201D:  // right double quote
    case 0xBB:    // right guillemet
      return true;
    default:
      return false;
  }
}

// True when the word ending just before position dot is an abbreviation,
// either listed or a dotted acronym such as "U.S" or "e.g".
bool IsAbbreviationBefore(std::u32string_view text, size_t dot) {
  size_t b = dot;
  while (b > 0 && !IsSpace(text[b - 1])) --b;
  std::u32string word;
  for (size_t i = b; i < dot; ++i) {
    const char32_t c = text[i];
    if (word.empty() && (c == U'(' || c == U'"' || c == 0x201C)) continue;
    word.push_back(ToLower(c));
  }
  if (word.empty()) return false;
  for (std::u32string_view abbr : kAbbreviations) {
    if (word == abbr) return true;
  }
  if (word.find(U'.') == std::u32string::npos) return false;
  // Dotted acronym: every piece between dots is one or two letters.
  size_t piece = 0;
  for (char32_t c : word) {
    if (c == U'.') {
      if (piece == 0 || piece > 2) return false;
      piece = 0;
    } else if (!IsWordChar(c) || IsDigit(c)) {
      return false;
    } else {
      ++piece;
    }
  }
  return piece > 0 && piece <= 2;
}

}  // namespace

std::vector<Sentence> SplitSentences(std::u32string_view text,
                                     std::string_view parent_id) {
  std::vector<Sentence> out;
  const size_t n = text.size();
  auto emit = [&](size_t begin, size_t end) {
    while (end > begin && IsSpace(text[end - 1])) --end;
    if (end <= begin) return;
    Sentence s;
    s.parent_id = std::string(parent_id);
    s.index = static_cast<int>(out.size());
    s.offset = static_cast<CharIndex>(begin);
    s.length = static_cast<CharIndex>(end - begin);
    s.text = EncodeUtf8(text.substr(begin, end - begin));
    out.push_back(std::move(s));
  };

  size_t start = 0;
  while (start < n && IsSpace(text[start])) ++start;
  size_t i = start;
  while (i < n) {
    const char32_t c = text[i];
    if (c == U'\n') {
      size_t k = i + 1;
      int newlines = 1;
      while (k < n && IsSpace(text[k])) {
        if (text[k] == U'\n') ++newlines;
        ++k;
      }
      if (newlines >= 2) {
        emit(start, i);
        start = k;
        i = k;
        continue;
      }
      ++i;
      continue;
    }
    if (!IsTerminal(c)) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < n && IsTerminal(text[j])) ++j;
    while (j < n && IsClosing(text[j])) ++j;
    if (j < n && !IsSpace(text[j])) {
      i = j;
      continue;
    }
    size_t k = j;
    while (k < n && IsSpace(text[k])) ++k;
    bool boundary = true;
    if (k < n && IsLower(text[k])) {
      boundary = false;
    } else if (k < n && c == U'.' && j == i + 1 &&
               IsAbbreviationBefore(text, i)) {
      boundary = false;
    }
    if (boundary) {
      emit(start, j);
      start = k;
    }
    i = k > j ? k : j;
  }
  emit(start, n);
  return out;
}

}  // namespace spanalign
