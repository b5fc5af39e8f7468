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

#include "gemframe/corrections.h"

#include <algorithm>
#include <set>

#include "gemframe/error.h"
#include "gemframe/text.h"
#include "json.hpp"

namespace gemframe {

namespace {

struct Location {
  ScopeNode* parent = nullptr;
  size_t index = 0;

  ScopeNode& node() const { return parent->children[index]; }
};

std::optional<Location> Locate(ScopeNode& node, const std::string& id) {
  for (size_t i = 0; i < node.children.size(); ++i) {
    if (node.children[i].id == id) return Location{&node, i};
    if (auto found = Locate(node.children[i], id)) return found;
  }
  return std::nullopt;
}

ScopeNode* FindCondition(ScopeNode& root, const std::string& id) {
  if (id == kRootId) return &root;
  auto location = Locate(root, id);
  if (!location || !location->node().is_condition()) return nullptr;
  return &location->node();
}

void SortChildren(ScopeNode* node) {
  std::stable_sort(node->children.begin(), node->children.end(), NodeLess);
}

// Puts `condition` under `parent`, moving into it every node of `pool`
// that lies inside its frame. The other pool nodes stay under `parent`.
void Regroup(ScopeNode* parent, ScopeNode condition,
             std::vector<ScopeNode> pool) {
  const Span scope = condition.frame.scope;
  parent->children.clear();
  for (ScopeNode& node : pool) {
    if (scope.Contains(node.span)) {
      if (node.is_condition() && !scope.Contains(node.frame.scope)) {
        throw ValidationError("frame of " + node.id +
                              " would partially overlap the frame of " +
                              condition.id);
      }
      condition.children.push_back(std::move(node));
    } else {
      parent->children.push_back(std::move(node));
    }
  }
  SortChildren(&condition);
  parent->children.push_back(std::move(condition));
  SortChildren(parent);
}

std::vector<ScopeNode> ChildrenExcept(ScopeNode* parent, size_t index) {
  std::vector<ScopeNode> out;
  for (size_t i = 0; i < parent->children.size(); ++i) {
    if (i != index) out.push_back(std::move(parent->children[i]));
  }
  return out;
}

bool IsSentenceEnd(const Document& doc, size_t pos) {
  for (const SentenceRef& sentence : doc.sentences()) {
    if (sentence.span.end == pos) return true;
  }
  for (const Block& block : doc.blocks()) {
    if (block.span.end == pos) return true;
  }
  return false;
}

void Reattach(ScopeNode& root, const Correction& c) {
  auto location = Locate(root, c.recommendation);
  if (!location || location->node().type != ScopeNode::Type::kRecommendation) {
    throw ValidationError("unknown recommendation '" + c.recommendation + "'");
  }
  const ScopeNode* target = FindCondition(root, c.parent);
  if (target == nullptr) {
    throw ValidationError("unknown parent condition '" + c.parent + "'");
  }
  const Span span = location->node().span;
  if (target->is_condition() && !target->frame.scope.Contains(span)) {
    throw ValidationError("recommendation " + c.recommendation +
                          " lies outside the frame of " + target->id);
  }
  ScopeNode leaf = std::move(location->node());
  location->parent->children.erase(location->parent->children.begin() +
                                   location->index);
  ScopeNode* parent = FindCondition(root, c.parent);
  parent->children.push_back(std::move(leaf));
  SortChildren(parent);
}

void AdjustFrameEnd(ScopeNode& root, const Correction& c, const Document& doc) {
  auto location = Locate(root, c.condition);
  if (!location || !location->node().is_condition()) {
    throw ValidationError("unknown condition '" + c.condition + "'");
  }
  ScopeNode* parent = location->parent;
  ScopeNode condition = std::move(location->node());
  if (c.end < condition.span.end) {
    throw ValidationError("frame end " + std::to_string(c.end) +
                          " precedes the end of condition " + condition.id);
  }
  if (c.end != condition.span.end && !IsSentenceEnd(doc, c.end)) {
    throw ValidationError("frame end " + std::to_string(c.end) +
                          " is not on a sentence boundary");
  }
  if (parent->is_condition() && c.end > parent->frame.scope.end) {
    throw ValidationError("frame end " + std::to_string(c.end) +
                          " lies outside the frame of " + parent->id);
  }
  std::vector<ScopeNode> pool = ChildrenExcept(parent, location->index);
  for (ScopeNode& child : condition.children) pool.push_back(std::move(child));
  condition.children.clear();
  condition.frame.scope.end = c.end;
  Regroup(parent, std::move(condition), std::move(pool));
}

IntroducerPosition RelabelPosition(const Document& doc, const Span& span,
                                   size_t block) {
  switch (doc.blocks()[block].kind) {
    case BlockKind::kTitle:
      return IntroducerPosition::kTitle;
    case BlockKind::kEnumIntro:
      return IntroducerPosition::kEnumIntro;
    default:
      break;
  }
  std::string_view trimmed = text::Trim(doc.Text(span));
  if (!trimmed.empty() && (trimmed.back() == ',' || trimmed.back() == ':')) {
    return IntroducerPosition::kDetached;
  }
  return IntroducerPosition::kIntegrated;
}

void Relabel(ScopeNode& root, const Correction& c, const Document& doc,
             const MarkerLexicon& lexicon) {
  auto location = Locate(root, c.segment);
  if (!location || location->node().type == ScopeNode::Type::kJustification) {
    throw ValidationError("unknown segment '" + c.segment + "'");
  }
  ScopeNode* parent = location->parent;
  const ScopeNode& old = location->node();
  const bool is_condition = old.is_condition();
  if (is_condition == (c.new_kind == SegmentKind::kCondition)) {
    throw ValidationError("segment " + c.segment + " is already a " +
                          std::string(SegmentKindName(c.new_kind)));
  }
  const Span span = old.span;

  if (is_condition) {
    ScopeNode condition = std::move(location->node());
    std::vector<ScopeNode> siblings = ChildrenExcept(parent, location->index);
    parent->children = std::move(siblings);
    for (ScopeNode& child : condition.children) {
      parent->children.push_back(std::move(child));
    }
    ScopeNode leaf;
    leaf.type = ScopeNode::Type::kRecommendation;
    leaf.span = span;
    leaf.id = SegmentId(SegmentKind::kRecommendation, span);
    parent->children.push_back(std::move(leaf));
    SortChildren(parent);
    return;
  }

  Segment segment;
  segment.kind = SegmentKind::kCondition;
  segment.span = span;
  segment.id = SegmentId(SegmentKind::kCondition, span);
  try {
    segment.origin_block = EnclosingUnit(doc, span.start).block;
  } catch (const std::out_of_range&) {
    throw ValidationError("segment " + c.segment + " lies outside the text");
  }
  segment.position = RelabelPosition(doc, span, segment.origin_block);

  ScopeNode condition;
  condition.type = ScopeNode::Type::kCondition;
  condition.id = segment.id;
  condition.span = span;
  condition.position = segment.position;
  condition.frame = ScopeResolver(doc, lexicon).DefaultScope(segment);
  for (RuleStep& step : condition.frame.trace) step.detail.clear();
  if (parent->is_condition() &&
      condition.frame.scope.end > parent->frame.scope.end) {
    condition.frame.scope.end = parent->frame.scope.end;
    condition.frame.trace.push_back({RuleId::kClipNesting, {}});
  }
  std::vector<ScopeNode> pool = ChildrenExcept(parent, location->index);
  Regroup(parent, std::move(condition), std::move(pool));
}

std::string_view KindName(Correction::Kind kind) {
  switch (kind) {
    case Correction::Kind::kReattach:
      return "reattach";
    case Correction::Kind::kAdjustFrameEnd:
      return "adjust_frame_end";
    case Correction::Kind::kRelabel:
      return "relabel";
  }
  return "";
}

}  // namespace

ScopeTree ApplyCorrection(const ScopeTree& tree, const Correction& correction,
                          const Document& doc, const MarkerLexicon& lexicon) {
  if (correction.base_version != tree.version) {
    throw ConflictError(correction.base_version, tree.version);
  }
  ScopeTree next = tree;
  switch (correction.kind) {
    case Correction::Kind::kReattach:
      Reattach(next.root, correction);
      break;
    case Correction::Kind::kAdjustFrameEnd:
      AdjustFrameEnd(next.root, correction, doc);
      break;
    case Correction::Kind::kRelabel:
      Relabel(next.root, correction, doc, lexicon);
      break;
  }
  if (auto violation = FindTreeViolation(next, doc.source().size())) {
    throw ValidationError(*violation);
  }
  next.version = tree.version + 1;
  return next;
}

std::string CorrectionToJson(const Correction& c) {
  nlohmann::ordered_json out;
  out["base_version"] = c.base_version;
  out["kind"] = KindName(c.kind);
  switch (c.kind) {
    case Correction::Kind::kReattach:
      out["recommendation"] = c.recommendation;
      out["parent"] = c.parent;
      break;
    case Correction::Kind::kAdjustFrameEnd:
      out["condition"] = c.condition;
      out["end"] = c.end;
      break;
    case Correction::Kind::kRelabel:
      out["segment"] = c.segment;
      out["new_kind"] = SegmentKindName(c.new_kind);
      break;
  }
  return out.dump();
}

Correction CorrectionFromJson(std::string_view json) {
  nlohmann::json in = nlohmann::json::parse(json, nullptr, false);
  if (in.is_discarded() || !in.is_object()) {
    throw std::invalid_argument("correction must be a JSON object");
  }
  auto string_field = [&](const char* key) {
    auto it = in.find(key);
    if (it == in.end() || !it->is_string()) {
      throw std::invalid_argument(std::string("missing string field '") + key +
                                  "'");
    }
    return it->get<std::string>();
  };
  auto integer_field = [&](const char* key) {
    auto it = in.find(key);
    if (it == in.end() || !it->is_number_integer() ||
        it->get<long long>() < 0) {
      throw std::invalid_argument(std::string("missing integer field '") + key +
                                  "'");
    }
    return it->get<long long>();
  };

  Correction c;
  c.base_version = static_cast<int>(integer_field("base_version"));
  const std::string kind = string_field("kind");
  if (kind == "reattach") {
    c.kind = Correction::Kind::kReattach;
    c.recommendation = string_field("recommendation");
    c.parent = string_field("parent");
  } else if (kind == "adjust_frame_end") {
    c.kind = Correction::Kind::kAdjustFrameEnd;
    c.condition = string_field("condition");
    c.end = static_cast<size_t>(integer_field("end"));
  } else if (kind == "relabel") {
    c.kind = Correction::Kind::kRelabel;
    c.segment = string_field("segment");
    std::optional<SegmentKind> new_kind =
        ParseSegmentKind(string_field("new_kind"));
    if (!new_kind) throw std::invalid_argument("unknown new_kind");
    c.new_kind = *new_kind;
  } else {
    throw std::invalid_argument("unknown correction kind '" + kind + "'");
  }
  return c;
}

}  // namespace gemframe
