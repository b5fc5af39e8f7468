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

#ifndef GEMFRAME_CORRECTIONS_H_
#define GEMFRAME_CORRECTIONS_H_

#include <stdexcept>
#include <string>

#include "gemframe/doc_model.h"
#include "gemframe/lexicon.h"
#include "gemframe/scope_resolver.h"
#include "gemframe/segmenter.h"

namespace gemframe {

// One expert edit of a scope tree.
//
//   reattach          moves recommendation `recommendation` under `parent`
//                     (a condition id, or "root");
//   adjust_frame_end  moves the end of `condition`'s frame to `end`, which
//                     must be a sentence end;
//   relabel           turns segment `segment` into a `new_kind` segment.
struct Correction {
  enum class Kind { kReattach, kAdjustFrameEnd, kRelabel };

  Kind kind = Kind::kReattach;
  int base_version = 0;
  std::string recommendation;
  std::string parent;
  std::string condition;
  size_t end = 0;
  std::string segment;
  SegmentKind new_kind = SegmentKind::kCondition;

  bool operator==(const Correction&) const = default;
};

inline constexpr char kRootId[] = "root";

// Stale base version. Carries the version the caller should reload.
class ConflictError : public std::runtime_error {
 public:
  ConflictError(int base_version, int current_version)
      : std::runtime_error("base version " + std::to_string(base_version) +
                           " is stale; current version is " +
                           std::to_string(current_version)),
        current_version_(current_version) {}

  int current_version() const { return current_version_; }

 private:
  int current_version_;
};

// Returns the corrected tree with version + 1. The input tree is never
// modified. Throws ConflictError when base_version is not the tree's
// version, and ValidationError naming the broken invariant when the edit
// is not allowed (unknown id, frame outside its parent, end not on a
// sentence boundary, overlapping segments, partially overlapping frames).
ScopeTree ApplyCorrection(const ScopeTree& tree, const Correction& correction,
                          const Document& doc, const MarkerLexicon& lexicon);

// JSON object form:
//   {"base_version": 3, "kind": "reattach", "recommendation": "r40-80",
//    "parent": "c0-12"}
//   {"base_version": 3, "kind": "adjust_frame_end", "condition": "c0-12",
//    "end": 120}
//   {"base_version": 3, "kind": "relabel", "segment": "r40-80",
//    "new_kind": "condition"}
// CorrectionFromJson throws std::invalid_argument on a malformed request.
std::string CorrectionToJson(const Correction& correction);
Correction CorrectionFromJson(std::string_view json);

}  // namespace gemframe

#endif  // GEMFRAME_CORRECTIONS_H_
