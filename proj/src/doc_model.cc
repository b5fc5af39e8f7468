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

#include "gemframe/doc_model.h"

#include <algorithm>
#include <stdexcept>

#include "gemframe/error.h"
#include "gemframe/text.h"

namespace gemframe {

namespace {

constexpr int kMaxTitleLevel = 6;

bool IsTerminator(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';';
}

bool IsBlank(std::string_view line) { return text::Trim(line).empty(); }

// Length of the "#... " title marker, 0 if `line` is not a title. `*level`
// receives the '#' count.
size_t TitleMarker(std::string_view line, int* level) {
  size_t k = 0;
  while (k < line.size() && line[k] == '#') ++k;
  if (k == 0 || k >= line.size() || line[k] != ' ') return 0;
  if (text::Trim(line.substr(k + 1)).empty()) return 0;
  *level = static_cast<int>(k);
  return k + 1;
}

// Length of the "- ", "* " or "12. " item marker, 0 if none.
size_t ItemMarker(std::string_view line) {
  size_t marker = 0;
  if (line.size() >= 2 && (line[0] == '-' || line[0] == '*') &&
      line[1] == ' ') {
    marker = 2;
  } else {
    size_t k = 0;
    while (k < line.size() && line[k] >= '0' && line[k] <= '9') ++k;
    if (k > 0 && k + 1 < line.size() && line[k] == '.' && line[k + 1] == ' ')
      marker = k + 2;
  }
  if (marker == 0 || text::Trim(line.substr(marker)).empty()) return 0;
  return marker;
}

struct PendingBlock {
  BlockKind kind;
  int level = 0;
  size_t begin = 0;
  size_t content_begin = 0;
  size_t end = 0;
};

bool EndsAbbreviation(std::string_view text, size_t sentence_start, size_t dot,
                      const std::vector<std::string>& folded) {
  size_t tok = dot;
  while (tok > sentence_start && !text::IsAsciiSpace(text[tok - 1])) --tok;
  while (tok < dot && (text[tok] == '(' || text[tok] == '[' ||
                       text[tok] == '"' || text[tok] == '\'')) {
    ++tok;
  }
  std::string token = text::FoldCase(text.substr(tok, dot + 1 - tok));
  return std::find(folded.begin(), folded.end(), token) != folded.end();
}

size_t SkipSpaces(std::string_view s, size_t pos) {
  while (pos < s.size()) {
    size_t len = text::SpaceLengthAt(s, pos);
    if (len == 0) break;
    pos += len;
  }
  return pos;
}

}  // namespace

std::string_view BlockKindName(BlockKind kind) {
  switch (kind) {
    case BlockKind::kTitle:
      return "title";
    case BlockKind::kParagraph:
      return "paragraph";
    case BlockKind::kEnumIntro:
      return "enum-intro";
    case BlockKind::kEnumItem:
      return "enum-item";
  }
  return "?";
}

Document::Document(std::string id, std::string source,
                   std::vector<Block> blocks,
                   std::vector<EnumGroup> enum_groups)
    : id_(std::move(id)),
      source_(std::move(source)),
      blocks_(std::move(blocks)),
      enum_groups_(std::move(enum_groups)) {
  for (size_t b = 0; b < blocks_.size(); ++b) {
    for (size_t s = 0; s < blocks_[b].sentences.size(); ++s) {
      sentences_.push_back({b, s, blocks_[b].sentences[s]});
    }
  }
}

std::optional<size_t> Document::EnumGroupOf(size_t block_index) const {
  for (size_t g = 0; g < enum_groups_.size(); ++g) {
    const EnumGroup& group = enum_groups_[g];
    if (group.intro == block_index) return g;
    if (std::find(group.items.begin(), group.items.end(), block_index) !=
        group.items.end()) {
      return g;
    }
  }
  return std::nullopt;
}

std::optional<size_t> Document::SentenceAt(size_t pos) const {
  auto it = std::upper_bound(
      sentences_.begin(), sentences_.end(), pos,
      [](size_t p, const SentenceRef& ref) { return p < ref.span.start; });
  if (it == sentences_.begin()) return std::nullopt;
  --it;
  if (!it->span.Contains(pos)) return std::nullopt;
  return static_cast<size_t>(it - sentences_.begin());
}

const std::vector<std::string>& DefaultAbbreviations() {
  static const std::vector<std::string> kAbbreviations = {
      "cf.",  "ex.",  "p.ex.", "env.", "dr.",   "pr.",  "vs.",
      "i.e.", "e.g.", "fig.",  "réf.", "coll.", "vol.", "suppl."};
  return kAbbreviations;
}

std::vector<Span> SplitSentences(std::string_view block_text,
                                 std::span<const std::string> abbreviations) {
  std::vector<std::string> folded;
  folded.reserve(abbreviations.size());
  for (const std::string& a : abbreviations)
    folded.push_back(text::FoldCase(a));

  std::vector<Span> spans;
  const size_t n = block_text.size();
  size_t start = SkipSpaces(block_text, 0);
  while (start < n) {
    bool closed = false;
    for (size_t pos = start; pos < n; ++pos) {
      if (!IsTerminator(block_text[pos])) continue;
      size_t next = pos + 1;
      if (next < n && text::SpaceLengthAt(block_text, next) == 0) continue;
      if (block_text[pos] == '.' &&
          EndsAbbreviation(block_text, start, pos, folded)) {
        continue;
      }
      spans.push_back({start, next});
      start = SkipSpaces(block_text, next);
      closed = true;
      break;
    }
    if (!closed) {
      spans.push_back(text::TrimSpan(block_text, {start, n}));
      break;
    }
  }
  return spans;
}

Document ParseDocument(std::string source, std::string id,
                       const ParseOptions& options) {
  if (auto bad = text::FindInvalidUtf8(source)) {
    throw ParseError("invalid UTF-8 sequence", *bad);
  }
  const std::string_view src(source);

  std::vector<PendingBlock> pending;
  bool open = false;  // a paragraph or item accepts continuation lines
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < src.size()) {
    ++line_no;
    size_t eol = src.find('\n', pos);
    if (eol == std::string_view::npos) eol = src.size();
    std::string_view line = src.substr(pos, eol - pos);

    if (IsBlank(line)) {
      open = false;
    } else {
      int level = 0;
      size_t marker;
      if ((marker = TitleMarker(line, &level)) > 0) {
        if (level > kMaxTitleLevel) {
          throw ParseError("title level " + std::to_string(level) +
                               " exceeds " + std::to_string(kMaxTitleLevel),
                           pos, line_no);
        }
        pending.push_back({BlockKind::kTitle, level, pos, pos + marker, eol});
        open = false;
      } else if ((marker = ItemMarker(line)) > 0) {
        pending.push_back({BlockKind::kEnumItem, 0, pos, pos + marker, eol});
        open = true;
      } else if (open) {
        pending.back().end = eol;
      } else {
        pending.push_back({BlockKind::kParagraph, 0, pos, pos, eol});
        open = true;
      }
    }
    pos = eol + 1;
  }

  std::vector<Block> blocks;
  blocks.reserve(pending.size());
  for (const PendingBlock& p : pending) {
    Block block;
    block.kind = p.kind;
    block.level = p.level;
    block.span = text::TrimSpan(src, {p.begin, p.end});
    block.content = text::TrimSpan(src, {p.content_begin, p.end});
    for (Span s :
         SplitSentences(src.substr(block.content.start, block.content.length()),
                        options.abbreviations)) {
      block.sentences.push_back(
          {s.start + block.content.start, s.end + block.content.start});
    }
    blocks.push_back(std::move(block));
  }

  std::vector<EnumGroup> groups;
  for (size_t b = 0; b < blocks.size();) {
    if (blocks[b].kind != BlockKind::kEnumItem) {
      ++b;
      continue;
    }
    EnumGroup group;
    if (b > 0 && blocks[b - 1].kind == BlockKind::kParagraph) {
      group.intro = b - 1;
      Block& intro = blocks[b - 1];
      if (src[intro.content.end - 1] == ':') intro.kind = BlockKind::kEnumIntro;
    }
    while (b < blocks.size() && blocks[b].kind == BlockKind::kEnumItem) {
      group.items.push_back(b++);
    }
    groups.push_back(std::move(group));
  }

  return Document(std::move(id), std::move(source), std::move(blocks),
                  std::move(groups));
}

UnitRef EnclosingUnit(const Document& doc, size_t pos) {
  std::optional<size_t> index = doc.SentenceAt(pos);
  if (!index) {
    throw std::out_of_range("no enclosing unit at byte " + std::to_string(pos));
  }
  const SentenceRef& ref = doc.sentences()[*index];
  return {ref.block, ref.index};
}

}  // namespace gemframe
