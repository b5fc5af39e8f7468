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

#ifndef GEMFRAME_TEXT_H_
#define GEMFRAME_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gemframe/span.h"

// Byte-level UTF-8 helpers shared by the parsers and matchers. Case folding
// is restricted to ASCII and the Latin-1/Latin Extended-A letters used in
// French so that folded text keeps every byte offset of the original.
namespace gemframe::text {

// Returns the offset of the first malformed UTF-8 sequence, if any.
std::optional<size_t> FindInvalidUtf8(std::string_view s);

// Decodes the code point starting at `pos`. `*length` receives its byte
// length. Input is assumed valid.
char32_t DecodeAt(std::string_view s, size_t pos, size_t* length);

// Byte length of the whitespace character at `pos` (ASCII whitespace,
// U+00A0 or U+202F), or 0 if there is none.
size_t SpaceLengthAt(std::string_view s, size_t pos);

inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsWordCodePoint(char32_t cp);

// True if a word character ends right before `pos`.
bool WordCharBefore(std::string_view s, size_t pos);
// True if a word character starts at `pos`.
bool WordCharAt(std::string_view s, size_t pos);

std::string FoldCase(std::string_view s);
std::string UpperCase(std::string_view s);

std::string_view Trim(std::string_view s);
// Shrinks `span` so that it neither starts nor ends with whitespace.
Span TrimSpan(std::string_view source, Span span);

// Maximal runs of word characters of `s`, case folded.
std::vector<std::string> WordTokens(std::string_view s);

}  // namespace gemframe::text

#endif  // GEMFRAME_TEXT_H_
