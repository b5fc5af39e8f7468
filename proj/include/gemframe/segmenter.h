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

#ifndef GEMFRAME_SEGMENTER_H_
#define GEMFRAME_SEGMENTER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gemframe/doc_model.h"
#include "gemframe/lexicon.h"
#include "gemframe/span.h"

namespace gemframe {

enum class SegmentKind { kCondition, kRecommendation };

// Where a condition's introducer sits. Recommendations use kNotApplicable.
enum class IntroducerPosition {
  kTitle,
  kEnumIntro,
  kDetached,
  kIntegrated,
  kNotApplicable,
};

std::string_view SegmentKindName(SegmentKind kind);
std::optional<SegmentKind> ParseSegmentKind(std::string_view name);

// "title", "enum-intro", "detached", "integrated" ("n/a" for kNotApplicable).
std::string_view PositionName(IntroducerPosition position);
std::optional<IntroducerPosition> ParsePosition(std::string_view name);

// Elementary segment. `hits` holds every marker of the host sentence (or of
// the whole title), so a split condition still sees the deontic marker that
// follows it.
struct Segment {
  std::string id;
  SegmentKind kind = SegmentKind::kRecommendation;
  Span span;
  IntroducerPosition position = IntroducerPosition::kNotApplicable;
  std::vector<MarkerHit> hits;
  size_t origin_block = 0;

  bool operator==(const Segment&) const = default;
};

// "c<start>-<end>" for conditions, "r<start>-<end>" for recommendations.
std::string SegmentId(SegmentKind kind, const Span& span);

// Turns marked sentences into condition and recommendation candidates.
//
// A sentence with a deontic marker yields a recommendation; one with a
// condition trigger yields a condition. When both occur, the sentence is
// split at a ',' or ':' following the trigger: the condition keeps the
// prefix up to and including the delimiter and the recommendation gets the
// rest. Without a usable delimiter both segments cover the whole sentence.
// Titles yield conditions only (trigger or domain term); they never yield
// recommendations.
std::vector<Segment> ClassifyUnits(const Document& doc,
                                   const MarkerLexicon& lexicon);

// Title and EnumIntro come from the origin block. Otherwise Detached when
// the first trigger opens the sentence and a ',' or ':' follows it before
// the first later deontic marker (or the sentence end); Integrated if not.
IntroducerPosition ClassifyPosition(const Segment& candidate,
                                    const Document& doc);

// Grows each recommendation over the following unmarked sentences of its
// block. Conditions are left alone. Output is sorted by (start, kind) with
// ids assigned from the final spans. Throws InvariantError if two segments
// of the same kind overlap.
std::vector<Segment> ExtendSegments(std::vector<Segment> candidates,
                                    const Document& doc,
                                    const MarkerLexicon& lexicon);

// ClassifyUnits followed by ExtendSegments.
std::vector<Segment> SegmentDocument(const Document& doc,
                                     const MarkerLexicon& lexicon);

}  // namespace gemframe

#endif  // GEMFRAME_SEGMENTER_H_
