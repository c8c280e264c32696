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

#ifndef SPANALIGN_SPAN_H_
#define SPANALIGN_SPAN_H_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace spanalign {

// Offsets count Unicode scalar values of the parent text.
using CharIndex = int64_t;

// Half-open interval [start, end).
struct CharRange {
  CharIndex start = 0;
  CharIndex end = 0;

  CharIndex length() const { return end - start; }
  friend auto operator<=>(const CharRange&, const CharRange&) = default;
};

// A possibly discontiguous set of character positions within one parent
// text, stored as sorted, disjoint, non-adjacent ranges. Construction merges
// overlapping and touching ranges and drops empty ones, so two spans compare
// equal iff they cover the same positions.
class Span {
 public:
  Span() = default;
  // Throws InvalidArgument if any range has start > end or start < 0.
  explicit Span(std::vector<CharRange> ranges);
  Span(std::initializer_list<CharRange> ranges)
      : Span(std::vector<CharRange>(ranges)) {}

  const std::vector<CharRange>& ranges() const { return ranges_; }
  bool empty() const { return ranges_.empty(); }
  CharIndex length() const { return length_; }
  // First covered position and one past the last; undefined when empty.
  CharIndex begin() const { return ranges_.front().start; }
  CharIndex end() const { return ranges_.back().end; }
  bool Contains(CharIndex pos) const;

  friend bool operator==(const Span& a, const Span& b) {
    return a.ranges_ == b.ranges_;
  }
  friend auto operator<=>(const Span& a, const Span& b) {
    return a.ranges_ <=> b.ranges_;
  }

 private:
  std::vector<CharRange> ranges_;
  CharIndex length_ = 0;
};

// Number of positions covered by both spans.
CharIndex IntersectionLength(const Span& a, const Span& b);

// Number of positions covered by either span.
inline CharIndex UnionLength(const Span& a, const Span& b) {
  return a.length() + b.length() - IntersectionLength(a, b);
}

// Positions covered by both spans; empty span when disjoint.
Span Intersect(const Span& a, const Span& b);

// Concatenates the text of each range, joined by a single space. Throws
// InvalidArgument when the span reaches past the parent text.
std::u32string SpanText(const Span& span, std::u32string_view parent);
std::string SpanTextUtf8(const Span& span, std::u32string_view parent);

}  // namespace spanalign

#endif  // SPANALIGN_SPAN_H_
