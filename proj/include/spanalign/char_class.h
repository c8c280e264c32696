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

#ifndef SPANALIGN_CHAR_CLASS_H_
#define SPANALIGN_CHAR_CLASS_H_

// Code point classification covering ASCII, Latin-1, Latin Extended-A,
// Greek and Cyrillic. Other scripts count as word characters without case.

namespace spanalign {

bool IsSpace(char32_t c);
bool IsPunctuation(char32_t c);
bool IsDigit(char32_t c);
inline bool IsWordChar(char32_t c) { return !IsSpace(c) && !IsPunctuation(c); }
char32_t ToLower(char32_t c);
bool IsLower(char32_t c);
inline bool IsUpper(char32_t c) { return ToLower(c) != c; }

}  // namespace spanalign

#endif  // SPANALIGN_CHAR_CLASS_H_
