#ifndef GEMFRAME_TESTS_PROPERTIES_H_
#define GEMFRAME_TESTS_PROPERTIES_H_

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "gemframe/gem_io.h"
#include "gemframe/pipeline.h"
#include "gemframe/scope_resolver.h"
#include "generators.h"

namespace gemframe::testing {

// Calls `visit(child, parent)` for every node below `node`.
inline void ForEachNode(
    const ScopeNode& node,
    const std::function<void(const ScopeNode&, const ScopeNode*)>& visit) {
  for (const ScopeNode& child : node.children) {
    visit(child, &node);
    ForEachNode(child, visit);
  }
}

inline bool TraceIs(const Frame& frame, std::initializer_list<RuleId> rules) {
  if (frame.trace.size() != rules.size()) return false;
  size_t i = 0;
  for (RuleId rule : rules) {
    if (frame.trace[i++].rule != rule) return false;
  }
  return true;
}

struct PropertyReport {
  int docs = 0;
  int failures = 0;
  std::map<std::string, int> checked;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void Fail(const std::string& message) {
    if (failures++ == 0) first_failure = message;
  }
};

// Frame end expected from the generator's own layout, or nothing when the
// frame was changed by an exception rule. An enumeration frame clipped by
// an enclosing frame that closes inside the enumeration ends with it.
inline std::optional<size_t> ExpectedDefaultEnd(const GeneratedDoc& g,
                                                const ScopeNode& node,
                                                const ScopeNode& parent) {
  const Frame& f = node.frame;
  const GeneratedDoc::Block* block = g.BlockAt(node.span.start);
  if (block == nullptr) return 0;
  if (TraceIs(f, {RuleId::kR4IntegratedSentence})) {
    std::optional<Span> sentence = g.SentenceAt(node.span.start);
    if (!sentence) return 0;
    return std::max(sentence->end, node.span.end);
  }
  if (TraceIs(f, {RuleId::kR3DetachedParagraph})) return block->span.end;
  if (f.base_rule() == RuleId::kR2Enum) {
    if (block->kind != GeneratedDoc::Kind::kIntro) return 0;
    if (TraceIs(f, {RuleId::kR2Enum})) return block->enum_end;
    if (TraceIs(f, {RuleId::kR2Enum, RuleId::kClipNesting}) &&
        parent.is_condition() && parent.frame.scope.end < block->enum_end) {
      return parent.frame.scope.end;
    }
    return 0;
  }
  if (TraceIs(f, {RuleId::kR1Title})) {
    if (block->kind != GeneratedDoc::Kind::kTitle) return 0;
    return g.SectionEnd(block->span.start);
  }
  return std::nullopt;
}

// R4-only frames end at their sentence, R3-only frames at their paragraph,
// R2 frames at their enumeration and R1-only frames at their section; trees
// nest, every segment is attached exactly once, and each node hangs from
// the innermost frame containing it.
inline PropertyReport CheckPipelineProperties(uint64_t seed, int docs) {
  DocGenerator gen(seed);
  PropertyReport report;
  for (int n = 0; n < docs; ++n) {
    const GeneratedDoc g = gen.Next();
    PipelineResult r = RunPipeline(g.text, "p", DefaultLexicon());
    ++report.docs;
    const std::string where = " in document:\n" + g.text;
    if (auto violation = FindTreeViolation(r.tree, g.text.size())) {
      report.Fail(*violation + where);
      continue;
    }

    std::map<std::string, int> seen;
    std::vector<const ScopeNode*> conditions;
    ForEachNode(r.tree.root, [&](const ScopeNode& node, const ScopeNode*) {
      ++seen[node.id];
      if (node.is_condition()) conditions.push_back(&node);
    });
    for (const Segment& s : r.segments) {
      if (seen[s.id] != 1) {
        report.Fail("segment " + s.id + " attached " +
                    std::to_string(seen[s.id]) + " times" + where);
      }
    }

    ForEachNode(r.tree.root, [&](const ScopeNode& node,
                                 const ScopeNode* parent) {
      if (node.is_condition()) {
        if (std::optional<size_t> end = ExpectedDefaultEnd(g, node, *parent)) {
          std::string rule(RuleName(node.frame.base_rule()));
          if (node.frame.Has(RuleId::kClipNesting)) rule += "+CLIP";
          ++report.checked[rule];
          if (node.frame.scope.end != *end) {
            report.Fail(std::string(RuleName(node.frame.base_rule())) +
                        " frame of " + node.id + " ends at " +
                        std::to_string(node.frame.scope.end) + ", expected " +
                        std::to_string(*end) + where);
          }
        }
      }
      const ScopeNode* innermost = nullptr;
      for (const ScopeNode* c : conditions) {
        if (c == &node || !c->frame.scope.Contains(node.span)) continue;
        if (node.is_condition() && !c->frame.scope.Contains(node.frame.scope)) {
          continue;
        }
        if (innermost == nullptr ||
            innermost->frame.scope.Contains(c->frame.scope)) {
          innermost = c;
        }
      }
      const ScopeNode* expected = innermost ? innermost : &r.tree.root;
      if (parent->id != expected->id) {
        report.Fail(node.id + " hangs from '" + parent->id +
                    "', innermost frame is '" + expected->id + "'" + where);
      }
    });
  }
  return report;
}

// parse(emit(t)) == t and emit is byte-stable for random valid trees.
inline PropertyReport CheckRoundTrip(uint64_t seed, int trees) {
  DocGenerator gen(seed);
  PropertyReport report;
  for (int n = 0; n < trees; ++n) {
    const GeneratedDoc g = gen.Next();
    const Document doc = ParseDocument(g.text, "rt" + std::to_string(n));
    const ScopeTree tree = TreeGenerator(doc, gen.rng()).Next();
    ++report.docs;
    if (auto violation = FindTreeViolation(tree, g.text.size())) {
      report.Fail("generator produced an invalid tree: " + *violation);
      continue;
    }
    const std::string xml = EmitGem(tree, doc);
    ++report.checked[tree.root.children.empty() ? "empty" : "nonempty"];
    const ScopeTree copy = tree;
    if (EmitGem(copy, doc) != xml) report.Fail("emit is not stable");
    const ScopeTree parsed = ParseGem(xml, &doc);
    if (!(parsed == tree)) report.Fail("parse(emit(t)) != t for:\n" + xml);
    if (EmitGem(parsed, doc) != xml)
      report.Fail("re-emit differs for:\n" + xml);
  }
  return report;
}

}  // namespace gemframe::testing

#endif  // GEMFRAME_TESTS_PROPERTIES_H_
