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

#ifndef SPANALIGN_UTF8_H_
#define SPANALIGN_UTF8_H_

#include <string>
#include <string_view>

namespace spanalign {

// Decodes UTF-8 into Unicode scalar values. Throws ParseError on malformed
// sequences, overlong encodings and surrogates.
std::u32string DecodeUtf8(std::string_view bytes);

std::string EncodeUtf8(std::u32string_view code_points);

}  // namespace spanalign

#endif  // SPANALIGN_UTF8_H_
