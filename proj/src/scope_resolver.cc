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

#include "gemframe/scope_resolver.h"

#include <algorithm>
#include <functional>
#include <set>

#include "gemframe/error.h"
#include "gemframe/text.h"

namespace gemframe {

namespace {

constexpr std::array<std::pair<RuleId, std::string_view>, 8> kRuleNames = {{
    {RuleId::kR1Title, "R1_title"},
    {RuleId::kR2Enum, "R2_enum"},
    {RuleId::kR3DetachedParagraph, "R3_detached_paragraph"},
    {RuleId::kR4IntegratedSentence, "R4_integrated_sentence"},
    {RuleId::kE1TitleRedundancy, "E1_title_redundancy"},
    {RuleId::kE2RuptureClose, "E2_rupture_close"},
    {RuleId::kE3AnaphoraExtend, "E3_anaphora_extend"},
    {RuleId::kClipNesting, "CLIP_nesting"},
}};

int TypeRank(ScopeNode::Type type) {
  switch (type) {
    case ScopeNode::Type::kRoot:
      return 0;
    case ScopeNode::Type::kCondition:
      return 1;
    case ScopeNode::Type::kRecommendation:
      return 2;
    case ScopeNode::Type::kJustification:
      return 3;
  }
  return 4;
}

std::set<std::string> ContentTokens(std::string_view text,
                                    const MarkerLexicon& lexicon) {
  std::set<std::string> tokens;
  for (std::string& token : text::WordTokens(text)) {
    if (std::find(lexicon.stopwords.begin(), lexicon.stopwords.end(), token) ==
        lexicon.stopwords.end()) {
      tokens.insert(std::move(token));
    }
  }
  return tokens;
}

std::string At(size_t offset) { return "byte " + std::to_string(offset); }

void CollectConditions(const ScopeNode& node,
                       std::vector<const ScopeNode*>* out) {
  if (node.is_condition()) out->push_back(&node);
  for (const ScopeNode& child : node.children) CollectConditions(child, out);
}

}  // namespace

std::string_view RuleName(RuleId rule) {
  for (const auto& [id, name] : kRuleNames) {
    if (id == rule) return name;
  }
  return "?";
}

std::optional<RuleId> ParseRuleName(std::string_view name) {
  for (const auto& [id, rule_name] : kRuleNames) {
    if (rule_name == name) return id;
  }
  return std::nullopt;
}

bool IsDefaultRule(RuleId rule) {
  return rule == RuleId::kR1Title || rule == RuleId::kR2Enum ||
         rule == RuleId::kR3DetachedParagraph ||
         rule == RuleId::kR4IntegratedSentence;
}

bool Frame::Has(RuleId rule) const {
  return std::any_of(trace.begin(), trace.end(),
                     [rule](const RuleStep& s) { return s.rule == rule; });
}

std::string_view NodeTypeName(ScopeNode::Type type) {
  switch (type) {
    case ScopeNode::Type::kRoot:
      return "root";
    case ScopeNode::Type::kCondition:
      return "condition";
    case ScopeNode::Type::kRecommendation:
      return "recommendation";
    case ScopeNode::Type::kJustification:
      return "justification";
  }
  return "?";
}

std::string JustificationId(const Span& span) {
  return "j" + std::to_string(span.start) + "-" + std::to_string(span.end);
}

bool NodeLess(const ScopeNode& a, const ScopeNode& b) {
  if (a.span.start != b.span.start) return a.span.start < b.span.start;
  if (a.type != b.type) return TypeRank(a.type) < TypeRank(b.type);
  return a.span.end < b.span.end;
}

std::vector<const ScopeNode*> ConditionNodes(const ScopeTree& tree) {
  std::vector<const ScopeNode*> out;
  CollectConditions(tree.root, &out);
  return out;
}

std::optional<std::string> FindTreeViolation(
    const ScopeTree& tree, std::optional<size_t> source_length) {
  if (tree.root.type != ScopeNode::Type::kRoot) return "top node is not root";

  std::optional<std::string> violation;
  std::set<std::string> ids;
  std::vector<Span> conditions, recommendations, justifications;
  std::vector<Span> scopes;

  std::function<void(const ScopeNode&, const ScopeNode*)> visit =
      [&](const ScopeNode& node, const ScopeNode* parent) {
        if (violation) return;
        auto fail = [&](const std::string& what) {
          violation = std::string(NodeTypeName(node.type)) + " " + node.id +
                      ": " + what;
        };
        if (parent != nullptr) {
          if (node.type == ScopeNode::Type::kRoot) return fail("nested root");
          if (node.span.start >= node.span.end) {
            return fail("start must be before end");
          }
          if (source_length && node.span.end > *source_length) {
            return fail("offset past end of source");
          }
          if (!ids.insert(node.id).second) return fail("duplicate id");
          if (parent->is_condition() &&
              !parent->frame.scope.Contains(node.span)) {
            return fail("span " + ToString(node.span) +
                        " lies outside the frame of parent " + parent->id);
          }
        }
        if (node.is_leaf() && !node.children.empty()) {
          return fail("leaf nodes cannot have children");
        }
        switch (node.type) {
          case ScopeNode::Type::kCondition: {
            const Frame& frame = node.frame;
            if (frame.condition != node.id) return fail("frame id mismatch");
            if (frame.scope.start != node.span.end ||
                frame.scope.end < frame.scope.start) {
              return fail("frame must start at the condition end");
            }
            if (source_length && frame.scope.end > *source_length) {
              return fail("frame past end of source");
            }
            if (!frame.trace.empty()) {
              if (!IsDefaultRule(frame.trace.front().rule)) {
                return fail("rule trace must open with a default rule");
              }
              for (size_t i = 1; i < frame.trace.size(); ++i) {
                if (IsDefaultRule(frame.trace[i].rule)) {
                  return fail("rule trace holds more than one default rule");
                }
              }
            }
            if (node.position == IntroducerPosition::kNotApplicable) {
              return fail("condition without introducer position");
            }
            conditions.push_back(node.span);
            scopes.push_back(frame.scope);
            break;
          }
          case ScopeNode::Type::kRecommendation:
            recommendations.push_back(node.span);
            break;
          case ScopeNode::Type::kJustification:
            justifications.push_back(node.span);
            break;
          case ScopeNode::Type::kRoot:
            break;
        }
        for (size_t i = 0; i < node.children.size(); ++i) {
          if (i > 0 && NodeLess(node.children[i], node.children[i - 1])) {
            violation = "children of " +
                        (node.id.empty() ? std::string("root") : node.id) +
                        " are out of document order";
            return;
          }
          visit(node.children[i], &node);
        }
      };
  visit(tree.root, nullptr);
  if (violation) return violation;

  for (auto* group : {&conditions, &recommendations, &justifications}) {
    std::sort(group->begin(), group->end());
    for (size_t i = 1; i < group->size(); ++i) {
      if ((*group)[i - 1].Overlaps((*group)[i])) {
        return "segments " + ToString((*group)[i - 1]) + " and " +
               ToString((*group)[i]) + " of the same kind overlap";
      }
    }
  }
  for (size_t i = 0; i < scopes.size(); ++i) {
    for (size_t j = i + 1; j < scopes.size(); ++j) {
      const Span& a = scopes[i];
      const Span& b = scopes[j];
      if (a.Overlaps(b) && !a.Contains(b) && !b.Contains(a)) {
        return "frames " + ToString(a) + " and " + ToString(b) +
               " partially overlap";
      }
    }
  }
  return std::nullopt;
}

ScopeResolver::ScopeResolver(const Document& doc, const MarkerLexicon& lexicon,
                             ResolverOptions options)
    : doc_(doc), lexicon_(lexicon), options_(options) {}

std::vector<MarkerHit> ScopeResolver::SentenceHits(size_t index) const {
  const Span span = doc_.sentences()[index].span;
  return MatchMarkers(doc_.Text(span), span, lexicon_);
}

size_t ScopeResolver::HostSentence(const Segment& condition) const {
  std::optional<size_t> index = doc_.SentenceAt(condition.span.start);
  if (!index) {
    throw InvariantError("condition " + ToString(condition.span) +
                         " lies outside every sentence");
  }
  return *index;
}

size_t ScopeResolver::SectionEnd(size_t title_block) const {
  const auto& blocks = doc_.blocks();
  const int level = blocks.at(title_block).level;
  for (size_t b = title_block + 1; b < blocks.size(); ++b) {
    if (blocks[b].kind == BlockKind::kTitle && blocks[b].level <= level) {
      return blocks[b - 1].span.end;
    }
  }
  return blocks.back().span.end;
}

std::optional<size_t> ScopeResolver::GoverningTitle(size_t block) const {
  for (size_t b = block; b-- > 0;) {
    if (doc_.blocks()[b].kind == BlockKind::kTitle) return b;
  }
  return std::nullopt;
}

Frame ScopeResolver::DefaultScope(const Segment& condition) const {
  if (condition.kind != SegmentKind::kCondition) {
    throw InvariantError("default scope requested for a recommendation");
  }
  const auto& blocks = doc_.blocks();
  const Block& block = blocks.at(condition.origin_block);
  Frame frame;
  frame.condition = condition.id;
  frame.scope = {condition.span.end, condition.span.end};
  size_t end = condition.span.end;
  switch (condition.position) {
    case IntroducerPosition::kTitle:
      end = SectionEnd(condition.origin_block);
      frame.trace.push_back({RuleId::kR1Title, "section ends at " + At(end)});
      break;
    case IntroducerPosition::kEnumIntro: {
      end = block.span.end;
      if (auto group = doc_.EnumGroupOf(condition.origin_block)) {
        end = blocks[doc_.enum_groups()[*group].items.back()].span.end;
      }
      frame.trace.push_back(
          {RuleId::kR2Enum, "enumeration ends at " + At(end)});
      break;
    }
    case IntroducerPosition::kDetached:
      end = block.span.end;
      frame.trace.push_back(
          {RuleId::kR3DetachedParagraph, "paragraph ends at " + At(end)});
      break;
    case IntroducerPosition::kIntegrated:
      end = doc_.sentences()[HostSentence(condition)].span.end;
      frame.trace.push_back(
          {RuleId::kR4IntegratedSentence, "sentence ends at " + At(end)});
      break;
    case IntroducerPosition::kNotApplicable:
      throw InvariantError("condition " + condition.id +
                           " has no introducer position");
  }
  frame.scope.end = std::max(end, frame.scope.start);
  return frame;
}

double ScopeResolver::TitleOverlap(size_t title_block,
                                   const Segment& condition) const {
  std::string cond_text(doc_.Text(condition.span));
  for (const MarkerHit& hit : condition.hits) {
    if (hit.marker_class != MarkerClass::kConditionTrigger ||
        !condition.span.Contains(hit.span)) {
      continue;
    }
    for (size_t p = hit.span.start; p < hit.span.end; ++p) {
      cond_text[p - condition.span.start] = ' ';
    }
  }
  std::set<std::string> title =
      ContentTokens(doc_.Text(doc_.blocks().at(title_block).content), lexicon_);
  std::set<std::string> cond = ContentTokens(cond_text, lexicon_);
  size_t shared = 0;
  for (const std::string& t : cond) shared += title.count(t);
  size_t total = title.size() + cond.size() - shared;
  return total == 0 ? 0.0 : static_cast<double>(shared) / total;
}

Frame ScopeResolver::ApplyTitleRedundancy(Frame frame, const Segment& condition,
                                          size_t title_block) const {
  if (frame.trace.empty() ||
      frame.base_rule() != RuleId::kR3DetachedParagraph) {
    return frame;
  }
  const double overlap = TitleOverlap(title_block, condition);
  if (overlap < options_.title_redundancy_threshold) return frame;
  const size_t end = SectionEnd(title_block);
  if (end <= frame.scope.end) return frame;
  frame.scope.end = end;
  frame.trace.push_back(
      {RuleId::kE1TitleRedundancy, "title overlap " + std::to_string(overlap) +
                                       ", section ends at " + At(end)});
  return frame;
}

ScopeResolver::RuptureResult ScopeResolver::ApplyRupture(
    Frame frame, const Segment& condition) const {
  RuptureResult result{std::move(frame), std::nullopt};
  Frame& f = result.frame;
  if (f.trace.empty() || f.base_rule() != RuleId::kR3DetachedParagraph) {
    return result;
  }
  const auto& sentences = doc_.sentences();
  const size_t host = HostSentence(condition);
  for (size_t i = host + 1;
       i < sentences.size() && sentences[i].span.end <= f.scope.end; ++i) {
    if (doc_.blocks()[sentences[i].block].kind == BlockKind::kTitle) continue;
    const Span sentence = sentences[i].span;
    for (const MarkerHit& hit : SentenceHits(i)) {
      if (!IsRupture(hit.marker_class) || hit.span.start != sentence.start) {
        continue;
      }
      f.scope.end = std::max(sentences[i - 1].span.end, f.scope.start);
      f.trace.push_back({RuleId::kE2RuptureClose,
                         "'" + hit.pattern + "' at " + At(sentence.start)});
      if (hit.marker_class == MarkerClass::kRuptureJustification) {
        const Block& block = doc_.blocks()[sentences[i].block];
        result.justification = Span{sentence.start, block.sentences.back().end};
      }
      return result;
    }
  }
  return result;
}

Frame ScopeResolver::ApplyAnaphora(Frame frame) const {
  if (frame.trace.empty() ||
      frame.base_rule() != RuleId::kR3DetachedParagraph) {
    return frame;
  }
  const auto& blocks = doc_.blocks();
  while (true) {
    auto ends_here = std::find_if(blocks.begin(), blocks.end(), [&](auto& b) {
      return b.kind != BlockKind::kTitle && b.span.end == frame.scope.end;
    });
    if (ends_here == blocks.end()) break;
    const size_t next = static_cast<size_t>(ends_here - blocks.begin()) + 1;
    if (next >= blocks.size() || blocks[next].kind == BlockKind::kTitle ||
        blocks[next].sentences.empty()) {
      break;
    }
    const Span first = blocks[next].sentences.front();
    auto hits = MatchMarkers(doc_.Text(first), first, lexicon_);
    auto cue = std::find_if(hits.begin(), hits.end(), [&](auto& h) {
      return h.marker_class == MarkerClass::kAnaphoraCue &&
             h.span.start == first.start;
    });
    if (cue == hits.end()) break;
    size_t end = blocks[next].span.end;
    if (blocks[next].kind == BlockKind::kEnumIntro) {
      if (auto group = doc_.EnumGroupOf(next)) {
        end = blocks[doc_.enum_groups()[*group].items.back()].span.end;
      }
    }
    frame.scope.end = end;
    frame.trace.push_back({RuleId::kE3AnaphoraExtend,
                           "'" + cue->pattern + "' continues to " + At(end)});
  }
  return frame;
}

ScopeTree ScopeResolver::Build(std::span<const Segment> segments) const {
  const size_t source_length = doc_.source().size();
  std::vector<const Segment*> conds;
  std::vector<const Segment*> recs;
  for (const Segment& seg : segments) {
    if (seg.span.end > source_length || seg.span.start > seg.span.end) {
      throw InvariantError("segment " + seg.id + " lies outside the document");
    }
    (seg.kind == SegmentKind::kCondition ? conds : recs).push_back(&seg);
  }
  auto by_start = [](const Segment* a, const Segment* b) {
    return a->span.start < b->span.start;
  };
  std::sort(conds.begin(), conds.end(), by_start);
  std::sort(recs.begin(), recs.end(), by_start);

  std::vector<Frame> frames;
  frames.reserve(conds.size());
  for (const Segment* c : conds) frames.push_back(DefaultScope(*c));

  // E1: first detached condition of each section.
  std::set<size_t> seen_titles;
  for (size_t i = 0; i < conds.size(); ++i) {
    if (conds[i]->position != IntroducerPosition::kDetached) continue;
    std::optional<size_t> title = GoverningTitle(conds[i]->origin_block);
    if (!title || !seen_titles.insert(*title).second) continue;
    frames[i] = ApplyTitleRedundancy(std::move(frames[i]), *conds[i], *title);
  }

  // E2, E3, then E2 again over whatever E3 added.
  std::vector<Span> justifications;
  for (size_t i = 0; i < conds.size(); ++i) {
    RuptureResult r = ApplyRupture(std::move(frames[i]), *conds[i]);
    if (r.justification) justifications.push_back(*r.justification);
    Frame grown = ApplyAnaphora(r.frame);
    if (grown.trace.size() != r.frame.trace.size()) {
      r = ApplyRupture(std::move(grown), *conds[i]);
      if (r.justification) justifications.push_back(*r.justification);
    }
    frames[i] = std::move(r.frame);
  }

  // Clip to the enclosing frame; parents fall out of the same pass.
  std::vector<std::optional<size_t>> cond_parent(conds.size());
  std::vector<size_t> open;
  for (size_t i = 0; i < conds.size(); ++i) {
    while (!open.empty() &&
           !frames[open.back()].scope.Contains(conds[i]->span)) {
      open.pop_back();
    }
    if (!open.empty()) {
      const Frame& outer = frames[open.back()];
      if (frames[i].scope.end > outer.scope.end) {
        frames[i].scope.end = outer.scope.end;
        frames[i].trace.push_back(
            {RuleId::kClipNesting,
             "clipped to the frame of " + outer.condition});
      }
      cond_parent[i] = open.back();
    }
    open.push_back(i);
  }

  // Justifications stop before the first sentence hosting a segment.
  std::vector<Span> leaves_j;
  for (const Span& raw : justifications) {
    std::optional<size_t> first = doc_.SentenceAt(raw.start);
    if (!first) continue;
    Span kept{raw.start, raw.start};
    for (size_t i = *first;
         i < doc_.sentences().size() && doc_.sentences()[i].span.end <= raw.end;
         ++i) {
      const Span s = doc_.sentences()[i].span;
      bool hosts = std::any_of(
          segments.begin(), segments.end(),
          [&s](const Segment& seg) { return seg.span.Overlaps(s); });
      if (hosts) break;
      kept.end = s.end;
    }
    if (!kept.empty() &&
        std::find(leaves_j.begin(), leaves_j.end(), kept) == leaves_j.end()) {
      leaves_j.push_back(kept);
    }
  }

  auto innermost = [&](const Span& span) -> std::optional<size_t> {
    std::optional<size_t> best;
    for (size_t i = 0; i < conds.size(); ++i) {
      if (!frames[i].scope.Contains(span)) continue;
      if (!best || frames[i].scope.length() < frames[*best].scope.length() ||
          (frames[i].scope.length() == frames[*best].scope.length() &&
           conds[i]->span.start > conds[*best]->span.start)) {
        best = i;
      }
    }
    return best;
  };

  std::vector<std::vector<ScopeNode>> children(conds.size() + 1);
  auto slot = [&](std::optional<size_t> parent) -> std::vector<ScopeNode>& {
    return children[parent ? *parent + 1 : 0];
  };
  for (const Segment* r : recs) {
    ScopeNode leaf;
    leaf.type = ScopeNode::Type::kRecommendation;
    leaf.id = r->id.empty() ? SegmentId(r->kind, r->span) : r->id;
    leaf.span = r->span;
    slot(innermost(r->span)).push_back(std::move(leaf));
  }
  for (const Span& j : leaves_j) {
    ScopeNode leaf;
    leaf.type = ScopeNode::Type::kJustification;
    leaf.id = JustificationId(j);
    leaf.span = j;
    slot(innermost(j)).push_back(std::move(leaf));
  }

  // Conditions are attached innermost first so that each node is complete
  // when moved into its parent.
  for (size_t i = conds.size(); i-- > 0;) {
    ScopeNode node;
    node.type = ScopeNode::Type::kCondition;
    node.id = conds[i]->id.empty() ? SegmentId(conds[i]->kind, conds[i]->span)
                                   : conds[i]->id;
    node.span = conds[i]->span;
    node.position = conds[i]->position;
    node.frame = std::move(frames[i]);
    node.frame.condition = node.id;
    node.children = std::move(children[i + 1]);
    std::sort(node.children.begin(), node.children.end(), NodeLess);
    slot(cond_parent[i]).push_back(std::move(node));
  }

  ScopeTree tree;
  tree.doc_id = doc_.id();
  tree.version = 1;
  tree.root.type = ScopeNode::Type::kRoot;
  tree.root.children = std::move(children[0]);
  std::sort(tree.root.children.begin(), tree.root.children.end(), NodeLess);
  return tree;
}

ScopeTree BuildScopeTree(const Document& doc, std::span<const Segment> segments,
                         const MarkerLexicon& lexicon,
                         const ResolverOptions& options) {
  return ScopeResolver(doc, lexicon, options).Build(segments);
}

}  // namespace gemframe
