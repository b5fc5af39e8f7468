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

#include "gemframe/segmenter.h"

#include <algorithm>

#include "gemframe/error.h"
#include "gemframe/text.h"

namespace gemframe {

namespace {

bool IsDelimiter(char c) { return c == ',' || c == ':'; }

const MarkerHit* FirstTrigger(const std::vector<MarkerHit>& hits,
                              const Span& within) {
  for (const MarkerHit& hit : hits) {
    if (hit.marker_class == MarkerClass::kConditionTrigger &&
        within.Contains(hit.span)) {
      return &hit;
    }
  }
  return nullptr;
}

const MarkerHit* FirstDeonticAfter(const std::vector<MarkerHit>& hits,
                                   size_t pos, const Span& within) {
  for (const MarkerHit& hit : hits) {
    if (IsDeontic(hit.marker_class) && hit.span.start > pos &&
        within.Contains(hit.span)) {
      return &hit;
    }
  }
  return nullptr;
}

// Offset of the ',' or ':' closing the condition clause, if the sentence
// can be split there.
std::optional<size_t> SplitPoint(const Document& doc, const Span& sentence,
                                 const MarkerHit& trigger,
                                 const MarkerHit* deontic_after) {
  const std::string& src = doc.source();
  if (deontic_after != nullptr) {
    for (size_t p = deontic_after->span.start; p > trigger.span.end; --p) {
      if (IsDelimiter(src[p - 1])) return p - 1;
    }
    return std::nullopt;
  }
  if (trigger.span.start != sentence.start) return std::nullopt;
  for (size_t p = trigger.span.end; p < sentence.end; ++p) {
    if (IsDelimiter(src[p])) return p;
  }
  return std::nullopt;
}

size_t SkipSpaces(std::string_view s, size_t pos, size_t limit) {
  while (pos < limit) {
    size_t len = text::SpaceLengthAt(s, pos);
    if (len == 0) break;
    pos += len;
  }
  return pos;
}

bool SegmentLess(const Segment& a, const Segment& b) {
  if (a.span.start != b.span.start) return a.span.start < b.span.start;
  if (a.kind != b.kind) return a.kind == SegmentKind::kCondition;
  return a.span.end < b.span.end;
}

}  // namespace

std::string_view SegmentKindName(SegmentKind kind) {
  return kind == SegmentKind::kCondition ? "condition" : "recommendation";
}

std::optional<SegmentKind> ParseSegmentKind(std::string_view name) {
  if (name == "condition") return SegmentKind::kCondition;
  if (name == "recommendation") return SegmentKind::kRecommendation;
  return std::nullopt;
}

std::string_view PositionName(IntroducerPosition position) {
  switch (position) {
    case IntroducerPosition::kTitle:
      return "title";
    case IntroducerPosition::kEnumIntro:
      return "enum-intro";
    case IntroducerPosition::kDetached:
      return "detached";
    case IntroducerPosition::kIntegrated:
      return "integrated";
    case IntroducerPosition::kNotApplicable:
      return "n/a";
  }
  return "?";
}

std::optional<IntroducerPosition> ParsePosition(std::string_view name) {
  if (name == "title") return IntroducerPosition::kTitle;
  if (name == "enum-intro") return IntroducerPosition::kEnumIntro;
  if (name == "detached") return IntroducerPosition::kDetached;
  if (name == "integrated") return IntroducerPosition::kIntegrated;
  return std::nullopt;
}

std::string SegmentId(SegmentKind kind, const Span& span) {
  return (kind == SegmentKind::kCondition ? "c" : "r") +
         std::to_string(span.start) + "-" + std::to_string(span.end);
}

IntroducerPosition ClassifyPosition(const Segment& candidate,
                                    const Document& doc) {
  const Block& block = doc.blocks().at(candidate.origin_block);
  if (block.kind == BlockKind::kTitle) return IntroducerPosition::kTitle;
  if (block.kind == BlockKind::kEnumIntro) {
    return IntroducerPosition::kEnumIntro;
  }
  std::optional<size_t> index = doc.SentenceAt(candidate.span.start);
  if (!index) return IntroducerPosition::kIntegrated;
  const Span sentence = doc.sentences()[*index].span;
  const MarkerHit* trigger = FirstTrigger(candidate.hits, sentence);
  if (trigger == nullptr || trigger->span.start != sentence.start) {
    return IntroducerPosition::kIntegrated;
  }
  const MarkerHit* deontic =
      FirstDeonticAfter(candidate.hits, trigger->span.start, sentence);
  const size_t limit = deontic ? deontic->span.start : sentence.end;
  for (size_t p = trigger->span.start; p < limit; ++p) {
    if (IsDelimiter(doc.source()[p])) return IntroducerPosition::kDetached;
  }
  return IntroducerPosition::kIntegrated;
}

std::vector<Segment> ClassifyUnits(const Document& doc,
                                   const MarkerLexicon& lexicon) {
  std::vector<Segment> out;
  for (size_t b = 0; b < doc.blocks().size(); ++b) {
    const Block& block = doc.blocks()[b];
    if (block.sentences.empty()) continue;

    if (block.kind == BlockKind::kTitle) {
      std::vector<MarkerHit> hits;
      for (const Span& s : block.sentences) {
        auto sentence_hits =
            MatchMarkers(doc.Text(s), s, lexicon, MatchContext::kTitle);
        hits.insert(hits.end(), sentence_hits.begin(), sentence_hits.end());
      }
      bool conditional = std::any_of(hits.begin(), hits.end(), [](auto& h) {
        return h.marker_class == MarkerClass::kConditionTrigger ||
               h.marker_class == MarkerClass::kDomainTerm;
      });
      if (conditional) {
        Segment cond{
            "",
            SegmentKind::kCondition,
            {block.sentences.front().start, block.sentences.back().end},
            IntroducerPosition::kTitle,
            std::move(hits),
            b};
        out.push_back(std::move(cond));
      }
      continue;
    }

    for (const Span& s : block.sentences) {
      std::vector<MarkerHit> hits = MatchMarkers(doc.Text(s), s, lexicon);
      const MarkerHit* trigger = FirstTrigger(hits, s);
      const bool deontic = std::any_of(hits.begin(), hits.end(), [](auto& h) {
        return IsDeontic(h.marker_class);
      });
      if (trigger == nullptr) {
        if (deontic) {
          out.push_back({"", SegmentKind::kRecommendation, s,
                         IntroducerPosition::kNotApplicable, hits, b});
        }
        continue;
      }

      const MarkerHit* deontic_after =
          FirstDeonticAfter(hits, trigger->span.start, s);
      std::optional<size_t> split = SplitPoint(doc, s, *trigger, deontic_after);

      Segment cond{"",   SegmentKind::kCondition,
                   s,    IntroducerPosition::kNotApplicable,
                   hits, b};
      if (split) cond.span.end = *split + 1;
      cond.position = ClassifyPosition(cond, doc);
      out.push_back(std::move(cond));

      if (deontic) {
        Span rec = s;
        if (split && deontic_after != nullptr) {
          rec.start = SkipSpaces(doc.source(), *split + 1, s.end);
        }
        out.push_back({"", SegmentKind::kRecommendation, rec,
                       IntroducerPosition::kNotApplicable, std::move(hits), b});
      }
    }
  }
  return out;
}

std::vector<Segment> ExtendSegments(std::vector<Segment> candidates,
                                    const Document& doc,
                                    const MarkerLexicon& lexicon) {
  const auto& sentences = doc.sentences();
  auto covered = [&candidates](const Span& span) {
    return std::any_of(
        candidates.begin(), candidates.end(),
        [&span](const Segment& c) { return c.span.Overlaps(span); });
  };

  for (Segment& seg : candidates) {
    if (seg.kind != SegmentKind::kRecommendation || seg.span.empty()) continue;
    std::optional<size_t> last = doc.SentenceAt(seg.span.end - 1);
    if (!last) continue;
    const size_t block = sentences[*last].block;
    for (size_t j = *last + 1;
         j < sentences.size() && sentences[j].block == block; ++j) {
      const Span next = sentences[j].span;
      if (covered(next) || !MatchMarkers(doc.Text(next), next, lexicon).empty())
        break;
      seg.span.end = next.end;
    }
  }

  std::sort(candidates.begin(), candidates.end(), SegmentLess);
  for (SegmentKind kind :
       {SegmentKind::kCondition, SegmentKind::kRecommendation}) {
    const Segment* prev = nullptr;
    for (const Segment& seg : candidates) {
      if (seg.kind != kind) continue;
      if (prev != nullptr && prev->span.Overlaps(seg.span)) {
        throw InvariantError(
            "overlapping " + std::string(SegmentKindName(kind)) + " segments " +
            ToString(prev->span) + " and " + ToString(seg.span));
      }
      prev = &seg;
    }
  }
  for (Segment& seg : candidates) seg.id = SegmentId(seg.kind, seg.span);
  return candidates;
}

std::vector<Segment> SegmentDocument(const Document& doc,
                                     const MarkerLexicon& lexicon) {
  return ExtendSegments(ClassifyUnits(doc, lexicon), doc, lexicon);
}

}  // namespace gemframe
