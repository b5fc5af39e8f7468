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

#include "gemframe/evaluator.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "gemframe/text.h"
#include "json.hpp"

namespace gemframe {

namespace {

bool Eligible(const Span& system, const Span& gold, MatchMode mode) {
  if (mode == MatchMode::kStrict) return system == gold;
  const size_t longer = std::max(system.length(), gold.length());
  return longer > 0 && 2 * system.OverlapLength(gold) >= longer;
}

void CollectSegments(const ScopeNode& node, std::vector<Segment>* out) {
  if (node.type == ScopeNode::Type::kCondition ||
      node.type == ScopeNode::Type::kRecommendation) {
    Segment segment;
    segment.id = node.id;
    segment.kind = node.is_condition() ? SegmentKind::kCondition
                                       : SegmentKind::kRecommendation;
    segment.span = node.span;
    segment.position = node.position;
    out->push_back(std::move(segment));
  }
  for (const ScopeNode& child : node.children) CollectSegments(child, out);
}

void CollectPairs(const ScopeNode& node, std::vector<std::string>* stack,
                  std::set<std::pair<std::string, std::string>>* out) {
  if (node.type == ScopeNode::Type::kRecommendation) {
    for (const std::string& condition : *stack) {
      out->emplace(condition, node.id);
    }
    return;
  }
  if (node.is_condition()) stack->push_back(node.id);
  for (const ScopeNode& child : node.children) CollectPairs(child, stack, out);
  if (node.is_condition()) stack->pop_back();
}

// Innermost governing condition id ("" for Root) of each recommendation.
void CollectParents(const ScopeNode& node, const std::string& parent,
                    std::map<std::string, std::string>* out) {
  if (node.type == ScopeNode::Type::kRecommendation) {
    (*out)[node.id] = parent;
    return;
  }
  const std::string& next = node.is_condition() ? node.id : parent;
  for (const ScopeNode& child : node.children) {
    CollectParents(child, next, out);
  }
}

// Matched system id -> gold id, over both kinds.
std::map<std::string, std::string> MatchIds(const std::vector<Segment>& system,
                                            const std::vector<Segment>& gold,
                                            std::string_view source) {
  std::map<std::string, std::string> out;
  for (const SegmentPair& pair :
       MatchSegments(system, gold, MatchMode::kLenient, source)) {
    out[system[pair.system].id] = gold[pair.gold].id;
  }
  return out;
}

std::string Percent(double ratio) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", 100.0 * ratio);
  return buffer;
}

nlohmann::ordered_json KindJson(const KindCounts& counts, const Prf& prf) {
  nlohmann::ordered_json out;
  out["present"] = counts.present;
  out["found"] = counts.found;
  out["correct"] = counts.correct;
  out["recall"] = prf.recall;
  out["precision"] = prf.precision;
  out["f_measure"] = prf.f_measure;
  return out;
}

}  // namespace

std::vector<SegmentPair> MatchSegments(std::span<const Segment> system,
                                       std::span<const Segment> gold,
                                       MatchMode mode,
                                       std::string_view source) {
  std::vector<Span> system_spans, gold_spans;
  for (const Segment& s : system) {
    system_spans.push_back(text::TrimSpan(source, s.span));
  }
  for (const Segment& g : gold) {
    gold_spans.push_back(text::TrimSpan(source, g.span));
  }
  std::vector<size_t> gold_order(gold.size());
  for (size_t i = 0; i < gold.size(); ++i) gold_order[i] = i;
  std::stable_sort(gold_order.begin(), gold_order.end(),
                   [&](size_t a, size_t b) {
                     return gold_spans[a].start < gold_spans[b].start;
                   });

  std::vector<bool> used(system.size(), false);
  std::vector<SegmentPair> pairs;
  for (size_t g : gold_order) {
    std::optional<size_t> best;
    size_t best_overlap = 0;
    for (size_t s = 0; s < system.size(); ++s) {
      if (used[s] || system[s].kind != gold[g].kind) continue;
      if (!Eligible(system_spans[s], gold_spans[g], mode)) continue;
      const size_t overlap = system_spans[s].OverlapLength(gold_spans[g]);
      if (!best || overlap > best_overlap ||
          (overlap == best_overlap &&
           system_spans[s].start < system_spans[*best].start)) {
        best = s;
        best_overlap = overlap;
      }
    }
    if (best) {
      used[*best] = true;
      pairs.push_back({*best, g});
    }
  }
  return pairs;
}

std::vector<Segment> TreeSegments(const ScopeTree& tree) {
  std::vector<Segment> out;
  CollectSegments(tree.root, &out);
  std::stable_sort(out.begin(), out.end(),
                   [](const Segment& a, const Segment& b) {
                     if (a.span.start != b.span.start) {
                       return a.span.start < b.span.start;
                     }
                     return a.kind == SegmentKind::kCondition &&
                            b.kind != SegmentKind::kCondition;
                   });
  return out;
}

double FMeasure(double recall, double precision) {
  if (recall + precision == 0) return 0;
  return 2 * recall * precision / (recall + precision);
}

Prf ScoresFromCounts(const KindCounts& counts) {
  Prf prf;
  if (counts.present > 0) {
    prf.recall = static_cast<double>(counts.found) / counts.present;
    prf.precision = static_cast<double>(counts.correct) / counts.present;
  }
  prf.f_measure = FMeasure(prf.recall, prf.precision);
  return prf;
}

KindCounts CountMatches(std::span<const Segment> system,
                        std::span<const Segment> gold, SegmentKind kind,
                        std::string_view source) {
  std::vector<Segment> sys, ref;
  for (const Segment& s : system) {
    if (s.kind == kind) sys.push_back(s);
  }
  for (const Segment& g : gold) {
    if (g.kind == kind) ref.push_back(g);
  }
  KindCounts counts;
  counts.present = ref.size();
  counts.found = MatchSegments(sys, ref, MatchMode::kStrict, source).size();
  counts.correct = MatchSegments(sys, ref, MatchMode::kLenient, source).size();
  return counts;
}

std::set<std::pair<std::string, std::string>> AttachmentPairs(
    const ScopeTree& tree) {
  std::set<std::pair<std::string, std::string>> out;
  std::vector<std::string> stack;
  CollectPairs(tree.root, &stack, &out);
  return out;
}

AttachmentCounts CountAttachments(const ScopeTree& system,
                                  const ScopeTree& gold,
                                  std::string_view source) {
  const auto to_gold =
      MatchIds(TreeSegments(system), TreeSegments(gold), source);
  const auto gold_pairs = AttachmentPairs(gold);
  std::set<std::pair<std::string, std::string>> mapped;
  for (const auto& [condition, recommendation] : AttachmentPairs(system)) {
    auto c = to_gold.find(condition);
    auto r = to_gold.find(recommendation);
    if (c != to_gold.end() && r != to_gold.end()) {
      mapped.emplace(c->second, r->second);
    }
  }
  AttachmentCounts counts;
  counts.gold_pairs = gold_pairs.size();
  for (const auto& pair : mapped) counts.common_pairs += gold_pairs.count(pair);
  return counts;
}

double AccuracyFromCounts(size_t common, size_t gold) {
  return gold == 0 ? 0.0 : static_cast<double>(common) / gold;
}

double AttachmentAccuracy(const ScopeTree& system, const ScopeTree& gold,
                          std::string_view source) {
  AttachmentCounts counts = CountAttachments(system, gold, source);
  return AccuracyFromCounts(counts.common_pairs, counts.gold_pairs);
}

AgreementCounts CountAgreement(const ScopeTree& a, const ScopeTree& b,
                               std::string_view source) {
  const std::vector<Segment> segments_a = TreeSegments(a);
  const std::vector<Segment> segments_b = TreeSegments(b);
  const auto a_to_b = MatchIds(segments_a, segments_b, source);
  std::map<std::string, std::string> parents_a, parents_b;
  CollectParents(a.root, "", &parents_a);
  CollectParents(b.root, "", &parents_b);

  AgreementCounts counts;
  std::set<std::string> aligned_b;
  for (const auto& [leaf, parent] : parents_a) {
    auto match = a_to_b.find(leaf);
    if (match == a_to_b.end()) {
      ++counts.unaligned_a;
      continue;
    }
    ++counts.aligned;
    aligned_b.insert(match->second);
    const std::string& parent_b = parents_b.at(match->second);
    if (parent.empty()) {
      if (parent_b.empty()) ++counts.agreeing;
    } else {
      auto mapped = a_to_b.find(parent);
      if (mapped != a_to_b.end() && mapped->second == parent_b) {
        ++counts.agreeing;
      }
    }
  }
  counts.unaligned_b = parents_b.size() - aligned_b.size();
  return counts;
}

double PairwiseAgreement(const ScopeTree& a, const ScopeTree& b,
                         std::string_view source) {
  AgreementCounts counts = CountAgreement(a, b, source);
  if (counts.total() == 0) return 1.0;
  return AccuracyFromCounts(counts.agreeing, counts.total());
}

std::vector<SentenceLabel> SentenceLabels(const ScopeTree& tree,
                                          const Document& doc) {
  std::vector<Segment> segments = TreeSegments(tree);
  std::vector<SentenceLabel> labels;
  for (const SentenceRef& sentence : doc.sentences()) {
    SentenceLabel label = SentenceLabel::kNone;
    for (const Segment& segment : segments) {
      if (!segment.span.Overlaps(sentence.span)) continue;
      if (segment.kind == SegmentKind::kCondition) {
        label = SentenceLabel::kCondition;
        break;
      }
      label = SentenceLabel::kRecommendation;
    }
    labels.push_back(label);
  }
  return labels;
}

double CohenKappa(std::span<const SentenceLabel> a,
                  std::span<const SentenceLabel> b) {
  if (a.empty() || a.size() != b.size()) {
    throw std::invalid_argument(
        "kappa needs two non-empty label sequences of equal length");
  }
  constexpr size_t kLabels = 3;
  double marginal_a[kLabels] = {}, marginal_b[kLabels] = {};
  size_t same = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    marginal_a[static_cast<size_t>(a[i])] += 1;
    marginal_b[static_cast<size_t>(b[i])] += 1;
    if (a[i] == b[i]) ++same;
  }
  const double n = static_cast<double>(a.size());
  const double observed = same / n;
  double chance = 0;
  for (size_t k = 0; k < kLabels; ++k) {
    chance += (marginal_a[k] / n) * (marginal_b[k] / n);
  }
  if (chance >= 1.0) return 1.0;
  return (observed - chance) / (1.0 - chance);
}

EvalReport Evaluate(const ScopeTree& system, const ScopeTree& gold,
                    const Document& doc) {
  const std::string_view source = doc.source();
  const std::vector<Segment> sys = TreeSegments(system);
  const std::vector<Segment> ref = TreeSegments(gold);

  EvalReport report;
  report.condition_counts =
      CountMatches(sys, ref, SegmentKind::kCondition, source);
  report.recommendation_counts =
      CountMatches(sys, ref, SegmentKind::kRecommendation, source);
  report.condition = ScoresFromCounts(report.condition_counts);
  report.recommendation = ScoresFromCounts(report.recommendation_counts);
  if (report.condition_counts.present == 0) {
    report.warnings.push_back("no gold conditions; scores set to 0");
  }
  if (report.recommendation_counts.present == 0) {
    report.warnings.push_back("no gold recommendations; scores set to 0");
  }

  report.attachment_counts = CountAttachments(system, gold, source);
  report.attachment_accuracy =
      AccuracyFromCounts(report.attachment_counts.common_pairs,
                         report.attachment_counts.gold_pairs);
  if (report.attachment_counts.gold_pairs == 0) {
    report.warnings.push_back("no gold attachment pairs; accuracy set to 0");
  }

  AgreementCounts agreement = CountAgreement(system, gold, source);
  report.agreement = PairwiseAgreement(system, gold, source);
  if (agreement.total() == 0) {
    report.warnings.push_back("no leaves in either tree; agreement set to 1");
  }

  if (doc.sentences().empty()) {
    report.warnings.push_back("document has no sentences; kappa undefined");
  } else {
    const auto labels_system = SentenceLabels(system, doc);
    const auto labels_gold = SentenceLabels(gold, doc);
    report.kappa = CohenKappa(labels_system, labels_gold);
  }
  return report;
}

std::string FormatReportTable(const EvalReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %8s %8s %8s %8s %10s %10s\n", "kind",
                "present", "found", "correct", "recall", "precision",
                "f_measure");
  out += line;
  auto row = [&](const char* name, const KindCounts& c, const Prf& p) {
    std::snprintf(line, sizeof(line), "%-16s %8zu %8zu %8zu %8s %10s %10s\n",
                  name, c.present, c.found, c.correct,
                  Percent(p.recall).c_str(), Percent(p.precision).c_str(),
                  Percent(p.f_measure).c_str());
    out += line;
  };
  row("conditions", report.condition_counts, report.condition);
  row("recommendations", report.recommendation_counts, report.recommendation);
  std::snprintf(line, sizeof(line), "%-16s %zu/%zu = %s\n", "attachments",
                report.attachment_counts.common_pairs,
                report.attachment_counts.gold_pairs,
                Percent(report.attachment_accuracy).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-16s %.4f\n", "agreement",
                report.agreement);
  out += line;
  if (report.kappa) {
    std::snprintf(line, sizeof(line), "%-16s %.4f\n", "kappa", *report.kappa);
  } else {
    std::snprintf(line, sizeof(line), "%-16s n/a\n", "kappa");
  }
  out += line;
  for (const std::string& warning : report.warnings) {
    out += "warning: " + warning + "\n";
  }
  return out;
}

std::string FormatReportJson(const EvalReport& report) {
  nlohmann::ordered_json out;
  out["conditions"] = KindJson(report.condition_counts, report.condition);
  out["recommendations"] =
      KindJson(report.recommendation_counts, report.recommendation);
  out["attachment_pairs_gold"] = report.attachment_counts.gold_pairs;
  out["attachment_pairs_common"] = report.attachment_counts.common_pairs;
  out["attachment_accuracy"] = report.attachment_accuracy;
  out["agreement"] = report.agreement;
  if (report.kappa) {
    out["kappa"] = *report.kappa;
  } else {
    out["kappa"] = nullptr;
  }
  out["matching"] = {{"found", "strict"}, {"correct", "lenient"}};
  out["warnings"] = report.warnings;
  return out.dump(2) + "\n";
}

}  // namespace gemframe
