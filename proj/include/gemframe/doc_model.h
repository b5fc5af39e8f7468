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

#ifndef GEMFRAME_DOC_MODEL_H_
#define GEMFRAME_DOC_MODEL_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gemframe/span.h"

namespace gemframe {

enum class BlockKind { kTitle, kParagraph, kEnumIntro, kEnumItem };

std::string_view BlockKindName(BlockKind kind);

// A physical unit of the input: a title line, a paragraph, an enumeration
// introducer, or one enumeration item.
struct Block {
  BlockKind kind = BlockKind::kParagraph;
  int level = 0;  // title level ('#' count), 0 for other kinds
  Span span;      // whole block, including any '#', '-' or '1.' marker
  Span content;   // span minus the structural marker
  std::vector<Span> sentences;

  bool operator==(const Block&) const = default;
};

struct EnumGroup {
  // Block right before the first item when it is a paragraph (kind
  // kEnumIntro when it ends with ':'). Empty when the enumeration opens the
  // document or directly follows a title.
  std::optional<size_t> intro;
  std::vector<size_t> items;

  bool operator==(const EnumGroup&) const = default;
};

struct SentenceRef {
  size_t block = 0;
  size_t index = 0;  // position inside the block
  Span span;
};

// Parsed, immutable view of a guideline text. All spans are byte offsets
// into source().
class Document {
 public:
  Document() = default;
  Document(std::string id, std::string source, std::vector<Block> blocks,
           std::vector<EnumGroup> enum_groups);

  const std::string& id() const { return id_; }
  const std::string& source() const { return source_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<EnumGroup>& enum_groups() const { return enum_groups_; }

  // All sentences of the document in order.
  const std::vector<SentenceRef>& sentences() const { return sentences_; }

  std::string_view Text(const Span& span) const {
    return std::string_view(source_).substr(span.start, span.length());
  }

  // Group containing block `index` as item or intro, if any.
  std::optional<size_t> EnumGroupOf(size_t block_index) const;

  // Index into sentences() of the sentence containing `pos`.
  std::optional<size_t> SentenceAt(size_t pos) const;

  bool operator==(const Document& other) const {
    return id_ == other.id_ && source_ == other.source_ &&
           blocks_ == other.blocks_ && enum_groups_ == other.enum_groups_;
  }

 private:
  std::string id_;
  std::string source_;
  std::vector<Block> blocks_;
  std::vector<EnumGroup> enum_groups_;
  std::vector<SentenceRef> sentences_;
};

// Small set of French abbreviations that end with a period.
const std::vector<std::string>& DefaultAbbreviations();

struct ParseOptions {
  std::vector<std::string> abbreviations = DefaultAbbreviations();
};

// Parses the line-oriented guideline format:
//
//   - blank lines separate blocks;
//   - "# ", "## ", ... (up to six) at column 0 opens a one-line title;
//   - "- ", "* " or "<digits>. " at column 0 opens an enumeration item;
//     following non-blank lines continue the item;
//   - any other line starts or continues a paragraph;
//   - a paragraph ending with ':' right before an item is an EnumIntro.
//
// Throws ParseError on malformed UTF-8 (byte position) or a title deeper
// than six levels (line number).
Document ParseDocument(std::string text, std::string id,
                       const ParseOptions& options = {});

// Sentence spans, relative to `block_text`. A sentence ends at '.', '!', '?'
// or ';' followed by whitespace or end of text, except when the '.' closes
// one of `abbreviations` (compared case-insensitively).
std::vector<Span> SplitSentences(std::string_view block_text,
                                 std::span<const std::string> abbreviations);

struct UnitRef {
  size_t block = 0;
  size_t sentence = 0;

  auto operator<=>(const UnitRef&) const = default;
};

// Block and sentence containing `pos`. Throws std::out_of_range when `pos`
// falls outside every sentence.
UnitRef EnclosingUnit(const Document& doc, size_t pos);

}  // namespace gemframe

#endif  // GEMFRAME_DOC_MODEL_H_
