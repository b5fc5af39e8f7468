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

#include "xml_reader.h"

#include "gemframe/error.h"
#include "gemframe/text.h"

namespace gemframe::xml {

namespace {

bool IsNameStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == ':' || static_cast<unsigned char>(c) >= 0x80;
}

bool IsNameChar(char c) {
  return IsNameStart(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  Element Document() {
    if (auto bad = text::FindInvalidUtf8(in_)) {
      throw ParseError("invalid UTF-8 sequence", *bad);
    }
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    SkipMisc();
    if (!Peek('<')) Fail("expected root element");
    Element root = ParseElement();
    SkipMisc();
    if (pos_ != in_.size()) Fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError("malformed XML: " + what, pos_);
  }

  bool Peek(char c) const { return pos_ < in_.size() && in_[pos_] == c; }
  bool Lookahead(std::string_view s) const {
    return in_.substr(pos_, s.size()) == s;
  }

  void Expect(std::string_view s) {
    if (!Lookahead(s)) Fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  void SkipSpace() {
    while (pos_ < in_.size() && text::IsAsciiSpace(in_[pos_])) ++pos_;
  }

  void SkipUntil(std::string_view terminator) {
    size_t end = in_.find(terminator, pos_);
    if (end == std::string_view::npos) {
      Fail("unterminated construct, missing '" + std::string(terminator) + "'");
    }
    pos_ = end + terminator.size();
  }

  // Prolog, comments, DOCTYPE and processing instructions between markup.
  void SkipMisc() {
    while (true) {
      SkipSpace();
      if (Lookahead("<?")) {
        SkipUntil("?>");
      } else if (Lookahead("<!--")) {
        SkipUntil("-->");
      } else if (Lookahead("<!DOCTYPE")) {
        SkipUntil(">");
      } else {
        return;
      }
    }
  }

  std::string ParseName() {
    size_t start = pos_;
    if (pos_ >= in_.size() || !IsNameStart(in_[pos_])) Fail("expected a name");
    while (pos_ < in_.size() && IsNameChar(in_[pos_])) ++pos_;
    return std::string(in_.substr(start, pos_ - start));
  }

  void ParseReference(std::string& out) {
    const size_t start = pos_;
    size_t semi = in_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) {
      Fail("unterminated entity reference");
    }
    std::string_view ref = in_.substr(pos_ + 1, semi - pos_ - 1);
    pos_ = semi + 1;
    if (ref == "amp") return out.push_back('&');
    if (ref == "lt") return out.push_back('<');
    if (ref == "gt") return out.push_back('>');
    if (ref == "quot") return out.push_back('"');
    if (ref == "apos") return out.push_back('\'');
    if (ref.size() >= 2 && ref[0] == '#') {
      char32_t cp = 0;
      const bool hex = ref[1] == 'x';
      for (char c : ref.substr(hex ? 2 : 1)) {
        int digit;
        if (c >= '0' && c <= '9') {
          digit = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          digit = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          digit = c - 'A' + 10;
        } else {
          pos_ = start;
          Fail("bad character reference");
        }
        cp = cp * (hex ? 16 : 10) + digit;
        if (cp > 0x10FFFF) break;
      }
      if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        pos_ = start;
        Fail("bad character reference");
      }
      return AppendUtf8(out, cp);
    }
    pos_ = start;
    Fail("unknown entity '&" + std::string(ref) + ";'");
  }

  std::string ParseAttributeValue() {
    if (!Peek('"') && !Peek('\'')) Fail("expected quoted attribute value");
    const char quote = in_[pos_++];
    std::string value;
    while (true) {
      if (pos_ >= in_.size()) Fail("unterminated attribute value");
      char c = in_[pos_];
      if (c == quote) {
        ++pos_;
        return value;
      }
      if (c == '<') Fail("'<' in attribute value");
      if (c == '&') {
        ParseReference(value);
      } else {
        value.push_back(c);
        ++pos_;
      }
    }
  }

  Element ParseElement() {
    Element element;
    element.offset = pos_;
    Expect("<");
    element.name = ParseName();
    while (true) {
      const size_t before = pos_;
      SkipSpace();
      if (Lookahead("/>")) {
        pos_ += 2;
        return element;
      }
      if (Peek('>')) {
        ++pos_;
        break;
      }
      if (pos_ == before) Fail("expected whitespace before attribute");
      std::string key = ParseName();
      if (element.Attribute(key) != nullptr) {
        Fail("duplicate attribute '" + key + "'");
      }
      SkipSpace();
      Expect("=");
      SkipSpace();
      element.attributes.emplace_back(std::move(key), ParseAttributeValue());
    }

    while (true) {
      if (pos_ >= in_.size())
        Fail("unterminated element <" + element.name + ">");
      if (Lookahead("</")) {
        pos_ += 2;
        const size_t name_at = pos_;
        std::string closing = ParseName();
        if (closing != element.name) {
          pos_ = name_at;
          Fail("mismatched closing tag </" + closing + "> for <" +
               element.name + ">");
        }
        SkipSpace();
        Expect(">");
        return element;
      }
      if (Lookahead("<!--")) {
        SkipUntil("-->");
      } else if (Lookahead("<![CDATA[")) {
        pos_ += 9;
        size_t end = in_.find("]]>", pos_);
        if (end == std::string_view::npos) Fail("unterminated CDATA section");
        element.text.append(in_.substr(pos_, end - pos_));
        pos_ = end + 3;
      } else if (Lookahead("<?")) {
        SkipUntil("?>");
      } else if (Peek('<')) {
        element.children.push_back(ParseElement());
      } else if (Peek('&')) {
        ParseReference(element.text);
      } else {
        element.text.push_back(in_[pos_++]);
      }
    }
  }

  std::string_view in_;
  size_t pos_ = 0;
};

std::string Escape(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default:
        out.push_back(c);
    }
  }
  return out;
}

}  // namespace

const std::string* Element::Attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

Element Read(std::string_view input) { return Reader(input).Document(); }

std::string EscapeText(std::string_view s) { return Escape(s, false); }
std::string EscapeAttribute(std::string_view s) { return Escape(s, true); }

}  // namespace gemframe::xml
