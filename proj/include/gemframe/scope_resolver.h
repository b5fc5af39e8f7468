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

#ifndef GEMFRAME_SCOPE_RESOLVER_H_
#define GEMFRAME_SCOPE_RESOLVER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gemframe/doc_model.h"
#include "gemframe/lexicon.h"
#include "gemframe/segmenter.h"
#include "gemframe/span.h"

namespace gemframe {

enum class RuleId {
  kR1Title,
  kR2Enum,
  kR3DetachedParagraph,
  kR4IntegratedSentence,
  kE1TitleRedundancy,
  kE2RuptureClose,
  kE3AnaphoraExtend,
  kClipNesting,
};

// "R1_title", "R2_enum", ..., "CLIP_nesting".
std::string_view RuleName(RuleId rule);
std::optional<RuleId> ParseRuleName(std::string_view name);

bool IsDefaultRule(RuleId rule);

struct RuleStep {
  RuleId rule = RuleId::kR4IntegratedSentence;
  // Human-readable explanation. Diagnostic only: it is not serialized and
  // does not take part in comparisons.
  std::string detail;

  bool operator==(const RuleStep& other) const { return rule == other.rule; }
};

// Region governed by one condition. `scope` starts where the condition
// ends; `trace` opens with exactly one default rule (R1..R4).
struct Frame {
  std::string condition;
  Span scope;
  std::vector<RuleStep> trace;

  RuleId base_rule() const { return trace.front().rule; }
  bool Has(RuleId rule) const;
  // True when only the default rule was applied.
  bool DefaultOnly() const { return trace.size() == 1; }

  bool operator==(const Frame&) const = default;
};

struct ScopeNode {
  enum class Type { kRoot, kCondition, kRecommendation, kJustification };

  Type type = Type::kRoot;
  std::string id;
  Span span;  // segment span; empty for the root
  IntroducerPosition position = IntroducerPosition::kNotApplicable;
  Frame frame;  // conditions only
  std::vector<ScopeNode> children;

  bool is_condition() const { return type == Type::kCondition; }
  bool is_leaf() const {
    return type == Type::kRecommendation || type == Type::kJustification;
  }

  bool operator==(const ScopeNode&) const = default;
};

std::string_view NodeTypeName(ScopeNode::Type type);

// "j<start>-<end>".
std::string JustificationId(const Span& span);

struct ScopeTree {
  std::string doc_id;
  ScopeNode root;
  int version = 1;

  bool operator==(const ScopeTree&) const = default;
};

// Checks the structural invariants of a tree: sibling order, leaves without
// children, children inside their parent's frame, nested frames, unique
// ids, and no overlap between segments of the same kind. `source_length`,
// when given, bounds every offset. Returns a description of the first
// violation, or nothing.
std::optional<std::string> FindTreeViolation(
    const ScopeTree& tree, std::optional<size_t> source_length = std::nullopt);

// Canonical sibling order: by start offset, conditions before
// recommendations before justifications at equal starts, then by end.
bool NodeLess(const ScopeNode& a, const ScopeNode& b);

struct ResolverOptions {
  // Minimum Jaccard overlap between title and first detached condition.
  double title_redundancy_threshold = 0.5;
};

class ScopeResolver {
 public:
  ScopeResolver(const Document& doc, const MarkerLexicon& lexicon,
                ResolverOptions options = {});

  // R1..R4 depending on the condition's introducer position.
  Frame DefaultScope(const Segment& condition) const;

  // End offset of the section opened by title block `title_block`: the
  // last block before the next title of the same or a higher level, or the
  // document end.
  size_t SectionEnd(size_t title_block) const;

  // Title whose section directly holds `block` (nearest preceding title).
  std::optional<size_t> GoverningTitle(size_t block) const;

  // Token Jaccard similarity used by ApplyTitleRedundancy.
  double TitleOverlap(size_t title_block, const Segment& condition) const;

  // Extends the first detached frame of a section to the section end when
  // the condition largely repeats the title. Unchanged otherwise.
  Frame ApplyTitleRedundancy(Frame frame, const Segment& condition,
                             size_t title_block) const;

  struct RuptureResult {
    Frame frame;
    std::optional<Span> justification;
  };
  // Closes a detached frame before the first later sentence that opens
  // with a contrast or justification marker. A justification marker also
  // yields the span from that sentence to the end of its block.
  RuptureResult ApplyRupture(Frame frame, const Segment& condition) const;

  // Extends a detached frame ending at a block end over each following
  // block whose first sentence opens with an anaphora cue.
  Frame ApplyAnaphora(Frame frame) const;

  // Full stage: default frames, E1, E2, E3 (then E2 again on frames E3
  // grew), clipping to enclosing frames, and nesting. Version is 1.
  ScopeTree Build(std::span<const Segment> segments) const;

  const Document& doc() const { return doc_; }

 private:
  std::vector<MarkerHit> SentenceHits(size_t sentence_index) const;
  size_t HostSentence(const Segment& condition) const;

  const Document& doc_;
  const MarkerLexicon& lexicon_;
  ResolverOptions options_;
};

// Frames of every condition node in the tree, in document order.
std::vector<const ScopeNode*> ConditionNodes(const ScopeTree& tree);

ScopeTree BuildScopeTree(const Document& doc, std::span<const Segment> segments,
                         const MarkerLexicon& lexicon,
                         const ResolverOptions& options = {});

}  // namespace gemframe

#endif  // GEMFRAME_SCOPE_RESOLVER_H_
