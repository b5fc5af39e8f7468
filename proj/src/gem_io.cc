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

#include "gemframe/gem_io.h"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>

#include "gemframe/error.h"
#include "gemframe/text.h"
#include "xml_reader.h"

namespace gemframe {

namespace {

std::string Attr(std::string_view key, std::string_view value) {
  return " " + std::string(key) + "=\"" + xml::EscapeAttribute(value) + "\"";
}

std::string Attr(std::string_view key, size_t value) {
  return Attr(key, std::to_string(value));
}

std::string JoinRules(const std::vector<RuleStep>& trace) {
  std::string out;
  for (const RuleStep& step : trace) {
    if (!out.empty()) out += ',';
    out += RuleName(step.rule);
  }
  return out;
}

void EmitNode(const ScopeNode& node, const Document& doc, int depth,
              std::string* out) {
  const std::string indent(2 * depth, ' ');
  switch (node.type) {
    case ScopeNode::Type::kCondition: {
      *out += indent + "<conditional" + Attr("start", node.span.start) +
              Attr("end", node.span.end) +
              Attr("scope-end", node.frame.scope.end) +
              Attr("position", PositionName(node.position)) +
              Attr("rules", JoinRules(node.frame.trace));
      if (node.children.empty()) {
        *out += "/>\n";
        return;
      }
      *out += ">\n";
      for (const ScopeNode& child : node.children) {
        EmitNode(child, doc, depth + 1, out);
      }
      *out += indent + "</conditional>\n";
      return;
    }
    case ScopeNode::Type::kRecommendation:
      if (node.span.end > doc.source().size()) {
        throw InvariantError("recommendation " + node.id +
                             " lies past the end of the source");
      }
      *out += indent + "<recommendation" + Attr("start", node.span.start) +
              Attr("end", node.span.end) + ">" +
              xml::EscapeText(doc.Text(node.span)) + "</recommendation>\n";
      return;
    case ScopeNode::Type::kJustification:
      *out += indent + "<justification" + Attr("start", node.span.start) +
              Attr("end", node.span.end) + "/>\n";
      return;
    case ScopeNode::Type::kRoot:
      throw InvariantError("nested root node");
  }
}

[[noreturn]] void Invalid(const xml::Element& element,
                          const std::string& what) {
  throw ValidationError("<" + element.name + "> at byte " +
                        std::to_string(element.offset) + ": " + what);
}

void CheckAttributes(const xml::Element& element,
                     std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : element.attributes) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Invalid(element, "unknown attribute '" + key + "'");
    }
  }
}

void CheckNoText(const xml::Element& element) {
  if (!text::Trim(element.text).empty()) {
    Invalid(element, "unexpected character data");
  }
}

const std::string& Required(const xml::Element& element, std::string_view key) {
  const std::string* value = element.Attribute(key);
  if (value == nullptr) {
    Invalid(element, "missing attribute '" + std::string(key) + "'");
  }
  return *value;
}

size_t ParseOffset(const xml::Element& element, std::string_view key,
                   const std::string& value) {
  size_t out = 0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() ||
      ptr != value.data() + value.size()) {
    Invalid(element, "attribute '" + std::string(key) +
                         "' is not a non-negative integer: '" + value + "'");
  }
  return out;
}

Span ParseSpan(const xml::Element& element) {
  Span span{ParseOffset(element, "start", Required(element, "start")),
            ParseOffset(element, "end", Required(element, "end"))};
  if (span.start >= span.end) {
    Invalid(element, "start " + std::to_string(span.start) +
                         " is not before end " + std::to_string(span.end));
  }
  return span;
}

size_t MaxEnd(const ScopeNode& node) {
  size_t end = node.type == ScopeNode::Type::kCondition
                   ? std::max(node.span.end, node.frame.scope.end)
                   : node.span.end;
  for (const ScopeNode& child : node.children)
    end = std::max(end, MaxEnd(child));
  return end;
}

ScopeNode ParseNode(const xml::Element& element, const Document* doc) {
  ScopeNode node;
  if (element.name == "conditional") {
    CheckAttributes(element,
                    {"start", "end", "scope-end", "position", "rules"});
    CheckNoText(element);
    node.type = ScopeNode::Type::kCondition;
    node.span = ParseSpan(element);
    node.id = SegmentId(SegmentKind::kCondition, node.span);
    const std::string& position = Required(element, "position");
    std::optional<IntroducerPosition> parsed = ParsePosition(position);
    if (!parsed || *parsed == IntroducerPosition::kNotApplicable) {
      Invalid(element, "unknown position '" + position + "'");
    }
    node.position = *parsed;
    node.frame.condition = node.id;
    if (const std::string* rules = element.Attribute("rules")) {
      std::string_view rest = *rules;
      while (!rest.empty()) {
        size_t comma = rest.find(',');
        std::string_view name = text::Trim(rest.substr(0, comma));
        std::optional<RuleId> rule = ParseRuleName(name);
        if (!rule) Invalid(element, "unknown rule '" + std::string(name) + "'");
        node.frame.trace.push_back(RuleStep{*rule, {}});
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    for (const xml::Element& child : element.children) {
      node.children.push_back(ParseNode(child, doc));
    }
    node.frame.scope.start = node.span.end;
    if (const std::string* scope_end = element.Attribute("scope-end")) {
      node.frame.scope.end = ParseOffset(element, "scope-end", *scope_end);
      if (node.frame.scope.end < node.span.end) {
        Invalid(element, "scope-end " + std::to_string(node.frame.scope.end) +
                             " precedes end " + std::to_string(node.span.end));
      }
    } else {
      node.frame.scope.end = node.span.end;
      for (const ScopeNode& child : node.children) {
        node.frame.scope.end = std::max(node.frame.scope.end, MaxEnd(child));
      }
    }
  } else if (element.name == "recommendation") {
    CheckAttributes(element, {"start", "end"});
    if (!element.children.empty()) {
      Invalid(element, "unexpected child <" + element.children[0].name + ">");
    }
    node.type = ScopeNode::Type::kRecommendation;
    node.span = ParseSpan(element);
    node.id = SegmentId(SegmentKind::kRecommendation, node.span);
    if (doc != nullptr && node.span.end <= doc->source().size() &&
        doc->Text(node.span) != element.text) {
      Invalid(element,
              "text does not match the source at " + ToString(node.span));
    }
  } else if (element.name == "justification") {
    CheckAttributes(element, {"start", "end"});
    CheckNoText(element);
    if (!element.children.empty()) {
      Invalid(element, "unexpected child <" + element.children[0].name + ">");
    }
    node.type = ScopeNode::Type::kJustification;
    node.span = ParseSpan(element);
    node.id = JustificationId(node.span);
  } else {
    Invalid(element, "unknown element '" + element.name + "'");
  }
  return node;
}

}  // namespace

std::string EmitGem(const ScopeTree& tree, const Document& doc) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<gem" + Attr("doc-id", tree.doc_id) +
         Attr("version", std::to_string(tree.version));
  if (tree.root.children.empty()) {
    out += "/>\n";
    return out;
  }
  out += ">\n";
  for (const ScopeNode& child : tree.root.children) {
    EmitNode(child, doc, 1, &out);
  }
  out += "</gem>\n";
  return out;
}

ScopeTree ParseGem(std::string_view input, const Document* doc) {
  const xml::Element root = xml::Read(input);
  if (root.name != "gem") Invalid(root, "unknown element '" + root.name + "'");
  CheckAttributes(root, {"doc-id", "version"});
  CheckNoText(root);

  ScopeTree tree;
  tree.doc_id = Required(root, "doc-id");
  const std::string& version = Required(root, "version");
  size_t parsed_version = ParseOffset(root, "version", version);
  if (parsed_version < 1 || parsed_version > 1000000000) {
    Invalid(root, "version must be a positive integer");
  }
  tree.version = static_cast<int>(parsed_version);
  tree.root.type = ScopeNode::Type::kRoot;
  for (const xml::Element& child : root.children) {
    tree.root.children.push_back(ParseNode(child, doc));
  }

  std::optional<size_t> bound;
  if (doc != nullptr) bound = doc->source().size();
  if (auto violation = FindTreeViolation(tree, bound)) {
    throw ValidationError(*violation);
  }
  return tree;
}

}  // namespace gemframe
