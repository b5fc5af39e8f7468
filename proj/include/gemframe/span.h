// Copyright 2026 The GemFrame Authors.
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

#ifndef GEMFRAME_SPAN_H_
#define GEMFRAME_SPAN_H_

#include <compare>
#include <cstddef>
#include <string>

namespace gemframe {

// Half-open byte range [start, end) into a UTF-8 source text.
struct Span {
  size_t start = 0;
  size_t end = 0;

  size_t length() const { return end - start; }
  bool empty() const { return start == end; }

  bool Contains(size_t pos) const { return pos >= start && pos < end; }
  bool Contains(const Span& other) const {
    return other.start >= start && other.end <= end;
  }
  bool Overlaps(const Span& other) const {
    return start < other.end && other.start < end;
  }
  size_t OverlapLength(const Span& other) const {
    size_t lo = start > other.start ? start : other.start;
    size_t hi = end < other.end ? end : other.end;
    return hi > lo ? hi - lo : 0;
  }

  auto operator<=>(const Span&) const = default;
};

inline std::string ToString(const Span& span) {
  return "[" + std::to_string(span.start) + "," + std::to_string(span.end) +
         ")";
}

}  // namespace gemframe

#endif  // GEMFRAME_SPAN_H_
