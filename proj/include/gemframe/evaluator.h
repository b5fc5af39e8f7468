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

#ifndef GEMFRAME_EVALUATOR_H_
#define GEMFRAME_EVALUATOR_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gemframe/doc_model.h"
#include "gemframe/scope_resolver.h"
#include "gemframe/segmenter.h"

namespace gemframe {

// Strict: same kind and identical spans once surrounding whitespace is
// trimmed. Lenient: same kind and an overlap of at least half the longer
// of the two trimmed spans.
enum class MatchMode { kStrict, kLenient };

struct SegmentPair {
  size_t system = 0;  // index into the system list
  size_t gold = 0;    // index into the gold list

  bool operator==(const SegmentPair&) const = default;
};

// One-to-one matching. Gold segments are taken in document order; each
// takes the unmatched eligible system segment with the largest overlap,
// the earliest one on ties.
std::vector<SegmentPair> MatchSegments(std::span<const Segment> system,
                                       std::span<const Segment> gold,
                                       MatchMode mode, std::string_view source);

// Condition and recommendation nodes of a tree as segments, sorted by
// (start, kind). Justifications are not segments.
std::vector<Segment> TreeSegments(const ScopeTree& tree);

struct KindCounts {
  size_t present = 0;  // gold segments
  size_t found = 0;    // strict matches
  size_t correct = 0;  // lenient matches

  bool operator==(const KindCounts&) const = default;
};

struct Prf {
  double recall = 0;
  double precision = 0;
  double f_measure = 0;
};

// Harmonic mean; 0 when both are 0.
double FMeasure(double recall, double precision);

// recall = found / present, precision = correct / present. Ratios in
// [0, 1]; 0 when present is 0.
Prf ScoresFromCounts(const KindCounts& counts);

KindCounts CountMatches(std::span<const Segment> system,
                        std::span<const Segment> gold, SegmentKind kind,
                        std::string_view source);

// (condition id, recommendation id) for every condition above every
// recommendation leaf, through any depth of nesting.
std::set<std::pair<std::string, std::string>> AttachmentPairs(
    const ScopeTree& tree);

struct AttachmentCounts {
  size_t gold_pairs = 0;
  size_t common_pairs = 0;
};

// System ids are mapped to their lenient gold counterparts before the pair
// sets are intersected; unmatched system segments contribute nothing.
AttachmentCounts CountAttachments(const ScopeTree& system,
                                  const ScopeTree& gold,
                                  std::string_view source);

// common / gold, 0 when there are no gold pairs.
double AccuracyFromCounts(size_t common, size_t gold);

double AttachmentAccuracy(const ScopeTree& system, const ScopeTree& gold,
                          std::string_view source);

struct AgreementCounts {
  size_t agreeing = 0;
  size_t aligned = 0;      // leaves matched across the two trees
  size_t unaligned_a = 0;  // leaves of A without a counterpart
  size_t unaligned_b = 0;

  size_t total() const { return aligned + unaligned_a + unaligned_b; }
};

// Recommendation leaves are aligned by lenient matching. An aligned pair
// agrees when both sit directly under Root, or under conditions that are
// themselves aligned. Unaligned leaves count as disagreements.
AgreementCounts CountAgreement(const ScopeTree& a, const ScopeTree& b,
                               std::string_view source);

// agreeing / total, 1 for two trees without leaves.
double PairwiseAgreement(const ScopeTree& a, const ScopeTree& b,
                         std::string_view source);

enum class SentenceLabel { kCondition, kRecommendation, kNone };

// One label per sentence of `doc`: Condition when a condition overlaps it,
// else Recommendation when a recommendation does, else None.
std::vector<SentenceLabel> SentenceLabels(const ScopeTree& tree,
                                          const Document& doc);

// Cohen's kappa. 1 when chance agreement is 1. Throws
// std::invalid_argument on empty or unequal-length input.
double CohenKappa(std::span<const SentenceLabel> a,
                  std::span<const SentenceLabel> b);

struct EvalReport {
  KindCounts condition_counts;
  KindCounts recommendation_counts;
  Prf condition;
  Prf recommendation;
  AttachmentCounts attachment_counts;
  double attachment_accuracy = 0;
  double agreement = 0;
  std::optional<double> kappa;  // absent for a document without sentences
  std::vector<std::string> warnings;
};

EvalReport Evaluate(const ScopeTree& system, const ScopeTree& gold,
                    const Document& doc);

// Fixed-width table, percentages with two decimals.
std::string FormatReportTable(const EvalReport& report);

// JSON object with the fields present, found, correct, recall, precision,
// f_measure (per kind), attachment_accuracy, agreement and kappa.
std::string FormatReportJson(const EvalReport& report);

}  // namespace gemframe

#endif  // GEMFRAME_EVALUATOR_H_
