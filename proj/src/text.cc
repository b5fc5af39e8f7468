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

#include "gemframe/text.h"

namespace gemframe::text {

namespace {

bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

std::optional<size_t> FindInvalidUtf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    size_t len;
    char32_t min;
    char32_t cp;
    if ((c & 0xE0) == 0xC0) {
      len = 2, min = 0x80, cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3, min = 0x800, cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4, min = 0x10000, cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (size_t k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if (!IsContinuation(cc)) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::nullopt;
}

char32_t DecodeAt(std::string_view s, size_t pos, size_t* length) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  size_t len = 1;
  char32_t cp = c;
  if (c >= 0xF0) {
    len = 4, cp = c & 0x07;
  } else if (c >= 0xE0) {
    len = 3, cp = c & 0x0F;
  } else if (c >= 0xC0) {
    len = 2, cp = c & 0x1F;
  }
  if (pos + len > s.size()) len = 1;
  for (size_t k = 1; k < len; ++k) {
    cp = (cp << 6) | (static_cast<unsigned char>(s[pos + k]) & 0x3F);
  }
  *length = len;
  return cp;
}

size_t SpaceLengthAt(std::string_view s, size_t pos) {
  if (pos >= s.size()) return 0;
  if (IsAsciiSpace(s[pos])) return 1;
  size_t len;
  char32_t cp = DecodeAt(s, pos, &len);
  return (cp == 0xA0 || cp == 0x202F) ? len : 0;
}

bool IsWordCodePoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9');
  }
  if (cp < 0xC0) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  return true;
}

bool WordCharAt(std::string_view s, size_t pos) {
  if (pos >= s.size()) return false;
  size_t len;
  return IsWordCodePoint(DecodeAt(s, pos, &len));
}

bool WordCharBefore(std::string_view s, size_t pos) {
  if (pos == 0 || pos > s.size()) return false;
  size_t start = pos - 1;
  while (start > 0 && pos - start < 4 &&
         IsContinuation(static_cast<unsigned char>(s[start]))) {
    --start;
  }
  return WordCharAt(s, start);
}

std::string FoldCase(std::string_view s) {
  std::string out(s);
  for (size_t i = 0; i < out.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + 32);
    } else if (i + 1 < out.size()) {
      unsigned char n = static_cast<unsigned char>(out[i + 1]);
      if (c == 0xC3 && n >= 0x80 && n <= 0x9E && n != 0x97) {
        out[i + 1] = static_cast<char>(n + 0x20);
        ++i;
      } else if (c == 0xC5 && n == 0x92) {  // Œ
        out[i + 1] = static_cast<char>(0x93);
        ++i;
      } else if (c == 0xC5 && n == 0xB8) {  // Ÿ
        out[i] = static_cast<char>(0xC3);
        out[i + 1] = static_cast<char>(0xBF);
        ++i;
      }
    }
  }
  return out;
}

std::string UpperCase(std::string_view s) {
  std::string out(s);
  for (size_t i = 0; i < out.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(out[i]);
    if (c >= 'a' && c <= 'z') {
      out[i] = static_cast<char>(c - 32);
    } else if (i + 1 < out.size()) {
      unsigned char n = static_cast<unsigned char>(out[i + 1]);
      if (c == 0xC3 && n >= 0xA0 && n <= 0xBE && n != 0xB7) {
        out[i + 1] = static_cast<char>(n - 0x20);
        ++i;
      } else if (c == 0xC5 && n == 0x93) {
        out[i + 1] = static_cast<char>(0x92);
        ++i;
      } else if (c == 0xC3 && n == 0xBF) {
        out[i] = static_cast<char>(0xC5);
        out[i + 1] = static_cast<char>(0xB8);
        ++i;
      }
    }
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  Span span = TrimSpan(s, Span{0, s.size()});
  return s.substr(span.start, span.length());
}

Span TrimSpan(std::string_view source, Span span) {
  while (span.start < span.end) {
    size_t len = SpaceLengthAt(source, span.start);
    if (len == 0 || span.start + len > span.end) break;
    span.start += len;
  }
  while (span.end > span.start) {
    if (IsAsciiSpace(source[span.end - 1])) {
      --span.end;
      continue;
    }
    // Multi-byte spaces: U+00A0 is 2 bytes, U+202F is 3.
    if (span.end - span.start >= 2 &&
        SpaceLengthAt(source, span.end - 2) == 2) {
      span.end -= 2;
      continue;
    }
    if (span.end - span.start >= 3 &&
        SpaceLengthAt(source, span.end - 3) == 3) {
      span.end -= 3;
      continue;
    }
    break;
  }
  return span;
}

std::vector<std::string> WordTokens(std::string_view s) {
  std::vector<std::string> tokens;
  std::string folded = FoldCase(s);
  size_t i = 0;
  while (i < folded.size()) {
    size_t len;
    char32_t cp = DecodeAt(folded, i, &len);
    if (!IsWordCodePoint(cp)) {
      i += len;
      continue;
    }
    size_t start = i;
    while (i < folded.size()) {
      cp = DecodeAt(folded, i, &len);
      if (!IsWordCodePoint(cp)) break;
      i += len;
    }
    tokens.emplace_back(folded.substr(start, i - start));
  }
  return tokens;
}

}  // namespace gemframe::text
