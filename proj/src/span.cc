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

#include "spanalign/span.h"

#include <algorithm>

#include "spanalign/errors.h"
#include "spanalign/utf8.h"

namespace spanalign {

Span::Span(std::vector<CharRange> ranges) {
  for (const CharRange& r : ranges) {
    if (r.start < 0 || r.start > r.end) {
      throw InvalidArgument("invalid character range [" +
                            std::to_string(r.start) + ", " +
                            std::to_string(r.end) + ")");
    }
  }
  std::erase_if(ranges, [](const CharRange& r) { return r.start == r.end; });
  std::sort(ranges.begin(), ranges.end());
  for (const CharRange& r : ranges) {
    if (!ranges_.empty() && r.start <= ranges_.back().end) {
      ranges_.back().end = std::max(ranges_.back().end, r.end);
    } else {
      ranges_.push_back(r);
    }
  }
  for (const CharRange& r : ranges_) length_ += r.length();
}

bool Span::Contains(CharIndex pos) const {
  auto it = std::upper_bound(
      ranges_.begin(), ranges_.end(), pos,
      [](CharIndex p, const CharRange& r) { return p < r.end; });
  return it != ranges_.end() && it->start <= pos;
}

CharIndex IntersectionLength(const Span& a, const Span& b) {
  const auto& ra = a.ranges();
  const auto& rb = b.ranges();
  CharIndex total = 0;
  size_t i = 0, j = 0;
  while (i < ra.size() && j < rb.size()) {
    const CharIndex lo = std::max(ra[i].start, rb[j].start);
    const CharIndex hi = std::min(ra[i].end, rb[j].end);
    if (lo < hi) total += hi - lo;
    if (ra[i].end < rb[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

Span Intersect(const Span& a, const Span& b) {
  const auto& ra = a.ranges();
  const auto& rb = b.ranges();
  std::vector<CharRange> out;
  size_t i = 0, j = 0;
  while (i < ra.size() && j < rb.size()) {
    const CharIndex lo = std::max(ra[i].start, rb[j].start);
    const CharIndex hi = std::min(ra[i].end, rb[j].end);
    if (lo < hi) out.push_back({lo, hi});
    if (ra[i].end < rb[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return Span(std::move(out));
}

std::u32string SpanText(const Span& span, std::u32string_view parent) {
  std::u32string out;
  for (const CharRange& r : span.ranges()) {
    if (r.end > static_cast<CharIndex>(parent.size())) {
      throw InvalidArgument("span range [" + std::to_string(r.start) + ", " +
                            std::to_string(r.end) +
                            ") exceeds parent text length " +
                            std::to_string(parent.size()));
    }
    if (!out.empty()) out.push_back(U' ');
    out.append(parent.substr(r.start, r.length()));
  }
  return out;
}

std::string SpanTextUtf8(const Span& span, std::u32string_view parent) {
  return EncodeUtf8(SpanText(span, parent));
}

}  // namespace spanalign
