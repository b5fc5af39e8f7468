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

#ifndef GEMFRAME_PIPELINE_H_
#define GEMFRAME_PIPELINE_H_

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "gemframe/doc_model.h"
#include "gemframe/lexicon.h"
#include "gemframe/scope_resolver.h"
#include "gemframe/segmenter.h"

namespace gemframe {

inline constexpr size_t kRuleCount = 8;

struct PipelineStats {
  size_t conditions = 0;
  size_t recommendations = 0;
  size_t justifications = 0;
  size_t default_only_frames = 0;  // frames decided by R1..R4 alone
  size_t exception_frames = 0;     // frames touched by E1..E3 or CLIP
  // Frames whose trace contains each rule, indexed by RuleId.
  std::array<size_t, kRuleCount> rule_frames{};

  size_t frames() const { return default_only_frames + exception_frames; }
  double DefaultFraction() const;
};

struct PipelineResult {
  Document doc;
  std::vector<Segment> segments;
  ScopeTree tree;
  PipelineStats stats;
};

PipelineStats ComputeStats(const ScopeTree& tree);

// Parse, segment, resolve.
PipelineResult RunPipeline(std::string text, std::string doc_id,
                           const MarkerLexicon& lexicon,
                           const ResolverOptions& options = {});

// Multi-line summary of segment counts and rule usage.
std::string FormatStats(const PipelineStats& stats);

// Whole-file helpers. Throw std::runtime_error naming the path on failure.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view content);

// File stem, used as document id ("guides/asthme.txt" -> "asthme").
std::string DocIdFromPath(const std::filesystem::path& path);

}  // namespace gemframe

#endif  // GEMFRAME_PIPELINE_H_
