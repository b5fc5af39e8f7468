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

#include "gemframe/lexicon.h"

#include <algorithm>

#include "gemframe/error.h"
#include "gemframe/text.h"

namespace gemframe {

namespace {

constexpr std::string_view kStopwordsSection = "stopwords";

const char kDefaultProfile[] =
#include "default_lexicon.inc"
    ;

// Endings accepted after the stem of an -er verb.
constexpr std::array<std::string_view, 18> kVerbSuffixes = {
    "e",   "es",  "é",     "ée",    "és",      "ées", "er",    "ez",  "ons",
    "ent", "era", "eront", "erait", "eraient", "ait", "aient", "ant", "erons"};

std::string NormalizeEntry(std::string_view raw) {
  std::string folded = text::FoldCase(text::Trim(raw));
  for (size_t at; (at = folded.find("\xE2\x80\x99")) != std::string::npos;) {
    folded.replace(at, 3, "'");
  }
  std::string out;
  bool space = false;
  for (char c : folded) {
    if (text::IsAsciiSpace(c)) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

void AddUnique(std::vector<std::string>& entries, std::string entry) {
  if (std::find(entries.begin(), entries.end(), entry) == entries.end()) {
    entries.push_back(std::move(entry));
  }
}

size_t ApostropheLengthAt(std::string_view s, size_t pos) {
  if (pos < s.size() && s[pos] == '\'') return 1;
  if (s.substr(pos, 3) == "\xE2\x80\x99") return 3;
  return 0;
}

bool StartsWithWordChar(std::string_view pattern) {
  return text::WordCharAt(pattern, 0);
}

bool EndsWithWordChar(std::string_view pattern) {
  return text::WordCharBefore(pattern, pattern.size());
}

// Length of the match of `pattern` at `pos` in the folded text, 0 if none.
size_t PhraseMatchAt(std::string_view folded, size_t pos,
                     std::string_view pattern) {
  if (pattern.empty()) return 0;
  if (StartsWithWordChar(pattern) && text::WordCharBefore(folded, pos)) {
    return 0;
  }
  size_t q = pos;
  for (size_t i = 0; i < pattern.size(); ++i) {
    char pc = pattern[i];
    if (pc == ' ') {
      size_t len = text::SpaceLengthAt(folded, q);
      if (len == 0) return 0;
      while ((len = text::SpaceLengthAt(folded, q)) > 0) q += len;
    } else if (pc == '\'') {
      size_t len = ApostropheLengthAt(folded, q);
      if (len == 0) return 0;
      q += len;
    } else {
      if (q >= folded.size() || folded[q] != pc) return 0;
      ++q;
    }
  }
  if (EndsWithWordChar(pattern) && text::WordCharAt(folded, q)) return 0;
  return q - pos;
}

bool IsInflectedVerb(std::string_view entry) {
  return entry.size() > 4 && entry.ends_with("er") &&
         entry.find(' ') == std::string_view::npos &&
         entry.find('\'') == std::string_view::npos;
}

bool VerbFormMatches(std::string_view token, std::string_view entry) {
  if (!IsInflectedVerb(entry)) return token == entry;
  std::string_view stem = entry.substr(0, entry.size() - 2);
  if (!token.starts_with(stem)) return false;
  std::string_view rest = token.substr(stem.size());
  return std::find(kVerbSuffixes.begin(), kVerbSuffixes.end(), rest) !=
         kVerbSuffixes.end();
}

size_t TokenEnd(std::string_view s, size_t pos) {
  size_t len;
  while (pos < s.size() && text::IsWordCodePoint(text::DecodeAt(s, pos, &len)))
    pos += len;
  return pos;
}

// Length of the best (longest) entry of `entries` matching at `pos`.
size_t BestMatchAt(std::string_view folded, size_t pos,
                   const std::vector<std::string>& entries, bool verbs,
                   const std::string** matched) {
  size_t best = 0;
  size_t token_end = 0;
  bool token_start = verbs && text::WordCharAt(folded, pos) &&
                     !text::WordCharBefore(folded, pos);
  if (token_start) token_end = TokenEnd(folded, pos);
  for (const std::string& entry : entries) {
    size_t len = 0;
    if (verbs && entry.find(' ') == std::string::npos &&
        entry.find('\'') == std::string::npos) {
      if (token_start &&
          VerbFormMatches(folded.substr(pos, token_end - pos), entry)) {
        len = token_end - pos;
      }
    } else {
      len = PhraseMatchAt(folded, pos, entry);
    }
    if (len > best) {
      best = len;
      *matched = &entry;
    }
  }
  return best;
}

}  // namespace

std::string_view MarkerClassName(MarkerClass c) {
  switch (c) {
    case MarkerClass::kConditionTrigger:
      return "condition_triggers";
    case MarkerClass::kDeonticVerb:
      return "deontic_verbs";
    case MarkerClass::kDeonticAdjective:
      return "deontic_adjectives";
    case MarkerClass::kRuptureContrast:
      return "rupture_contrast";
    case MarkerClass::kRuptureJustification:
      return "rupture_justification";
    case MarkerClass::kAnaphoraCue:
      return "anaphora_cues";
    case MarkerClass::kDomainTerm:
      return "domain_terms";
  }
  return "?";
}

bool IsDeontic(MarkerClass c) {
  return c == MarkerClass::kDeonticVerb || c == MarkerClass::kDeonticAdjective;
}

bool IsRupture(MarkerClass c) {
  return c == MarkerClass::kRuptureContrast ||
         c == MarkerClass::kRuptureJustification;
}

const std::vector<std::string>& MarkerLexicon::Entries(MarkerClass c) const {
  return const_cast<MarkerLexicon*>(this)->Entries(c);
}

std::vector<std::string>& MarkerLexicon::Entries(MarkerClass c) {
  switch (c) {
    case MarkerClass::kConditionTrigger:
      return condition_triggers;
    case MarkerClass::kDeonticVerb:
      return deontic_verbs;
    case MarkerClass::kDeonticAdjective:
      return deontic_adjectives;
    case MarkerClass::kRuptureContrast:
      return rupture_contrast;
    case MarkerClass::kRuptureJustification:
      return rupture_justification;
    case MarkerClass::kAnaphoraCue:
      return anaphora_cues;
    case MarkerClass::kDomainTerm:
      return domain_terms;
  }
  return condition_triggers;
}

MarkerLexicon ParseLexicon(std::string_view config, MarkerLexicon base) {
  std::vector<std::string>* section = nullptr;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < config.size()) {
    ++line_no;
    size_t eol = config.find('\n', pos);
    if (eol == std::string_view::npos) eol = config.size();
    std::string_view line = config.substr(pos, eol - pos);
    const size_t line_start = pos;
    pos = eol + 1;

    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (text::Trim(line).empty()) continue;

    if (!text::IsAsciiSpace(line[0])) {
      std::string_view header = text::Trim(line);
      if (header.back() != ':') {
        throw ParseError("expected a 'class_name:' section header", line_start,
                         line_no);
      }
      std::string_view name = text::Trim(header.substr(0, header.size() - 1));
      section = nullptr;
      if (name == kStopwordsSection) section = &base.stopwords;
      for (MarkerClass c : kAllMarkerClasses) {
        if (name == MarkerClassName(c)) section = &base.Entries(c);
      }
      if (section == nullptr) {
        throw ParseError("unknown marker class '" + std::string(name) + "'",
                         line_start, line_no);
      }
      continue;
    }
    if (!line.starts_with("  ") || text::IsAsciiSpace(line[2])) {
      throw ParseError("entries must be indented by exactly two spaces",
                       line_start, line_no);
    }
    if (section == nullptr) {
      throw ParseError("entry outside of a class section", line_start, line_no);
    }
    AddUnique(*section, NormalizeEntry(line));
  }
  return base;
}

const MarkerLexicon& DefaultLexicon() {
  static const MarkerLexicon kDefault =
      ParseLexicon(kDefaultProfile, MarkerLexicon{});
  return kDefault;
}

MarkerLexicon LoadLexicon(std::string_view config) {
  return ParseLexicon(config, DefaultLexicon());
}

std::string SerializeLexicon(const MarkerLexicon& lexicon) {
  std::string out;
  auto section = [&out](std::string_view name,
                        const std::vector<std::string>& entries) {
    out.append(name).append(":\n");
    for (const std::string& e : entries)
      out.append("  ").append(e).append("\n");
  };
  for (MarkerClass c : kAllMarkerClasses) {
    section(MarkerClassName(c), lexicon.Entries(c));
  }
  section(kStopwordsSection, lexicon.stopwords);
  return out;
}

std::vector<MarkerHit> MatchMarkers(std::string_view sentence_text,
                                    Span sentence_span,
                                    const MarkerLexicon& lexicon,
                                    MatchContext context) {
  const std::string folded = text::FoldCase(sentence_text);
  std::vector<MarkerHit> hits;
  for (MarkerClass c : kAllMarkerClasses) {
    if (c == MarkerClass::kDomainTerm && context != MatchContext::kTitle) {
      continue;
    }
    const std::vector<std::string>& entries = lexicon.Entries(c);
    if (entries.empty()) continue;
    const bool verbs = c == MarkerClass::kDeonticVerb;
    size_t pos = 0;
    while (pos < folded.size()) {
      const std::string* matched = nullptr;
      size_t len = BestMatchAt(folded, pos, entries, verbs, &matched);
      if (len > 0) {
        hits.push_back(
            {c,
             {sentence_span.start + pos, sentence_span.start + pos + len},
             *matched});
        pos += len;
      } else {
        size_t cp_len;
        text::DecodeAt(folded, pos, &cp_len);
        pos += cp_len;
      }
    }
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const MarkerHit& a, const MarkerHit& b) {
                     return a.span.start < b.span.start;
                   });
  return hits;
}

}  // namespace gemframe
