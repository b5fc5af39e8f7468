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

#ifndef GEMFRAME_LEXICON_H_
#define GEMFRAME_LEXICON_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gemframe/span.h"

namespace gemframe {

enum class MarkerClass {
  kConditionTrigger,
  kDeonticVerb,
  kDeonticAdjective,
  kRuptureContrast,
  kRuptureJustification,
  kAnaphoraCue,
  kDomainTerm,
};

inline constexpr std::array<MarkerClass, 7> kAllMarkerClasses = {
    MarkerClass::kConditionTrigger,
    MarkerClass::kDeonticVerb,
    MarkerClass::kDeonticAdjective,
    MarkerClass::kRuptureContrast,
    MarkerClass::kRuptureJustification,
    MarkerClass::kAnaphoraCue,
    MarkerClass::kDomainTerm};

// Section name used in lexicon files ("condition_triggers", ...).
std::string_view MarkerClassName(MarkerClass c);

bool IsDeontic(MarkerClass c);
bool IsRupture(MarkerClass c);

// Marker inventories. Entries are stored case folded and without
// duplicates. Deontic verbs are written as infinitives ("recommander") or
// as fixed forms ("faut"); see MatchMarkers for how they are inflected.
struct MarkerLexicon {
  std::vector<std::string> condition_triggers;
  std::vector<std::string> deontic_verbs;
  std::vector<std::string> deontic_adjectives;
  std::vector<std::string> rupture_contrast;
  std::vector<std::string> rupture_justification;
  std::vector<std::string> anaphora_cues;
  std::vector<std::string> domain_terms;
  std::vector<std::string> stopwords;

  const std::vector<std::string>& Entries(MarkerClass c) const;
  std::vector<std::string>& Entries(MarkerClass c);

  bool operator==(const MarkerLexicon&) const = default;
};

struct MarkerHit {
  MarkerClass marker_class = MarkerClass::kConditionTrigger;
  Span span;
  std::string pattern;

  bool operator==(const MarkerHit&) const = default;
};

const MarkerLexicon& DefaultLexicon();

// Parses a lexicon file and merges its entries over `base`:
//
//   # comment
//   deontic_verbs:
//     recommander
//     conseiller
//
// Section names are the MarkerLexicon field names. Throws ParseError with
// the line number on syntax errors and unknown section names.
MarkerLexicon ParseLexicon(std::string_view config, MarkerLexicon base);

// ParseLexicon over the built-in default profile.
MarkerLexicon LoadLexicon(std::string_view config);

std::string SerializeLexicon(const MarkerLexicon& lexicon);

// Where the matched text sits. Domain terms only match in titles.
enum class MatchContext { kBody, kTitle };

// Marker occurrences in one sentence. `sentence_text` must be the source
// slice covered by `sentence_span`; returned spans are document offsets.
//
// Matching is case-insensitive and anchored on word boundaries. A space in a
// pattern matches any run of whitespace. Deontic verbs ending in "er" match
// their stem followed by one of a fixed set of inflection suffixes
// ("recommander" matches "recommandé", "recommandons", ...). Hits of the
// same class never overlap; the longest entry wins at a given position.
std::vector<MarkerHit> MatchMarkers(std::string_view sentence_text,
                                    Span sentence_span,
                                    const MarkerLexicon& lexicon,
                                    MatchContext context = MatchContext::kBody);

}  // namespace gemframe

#endif  // GEMFRAME_LEXICON_H_
