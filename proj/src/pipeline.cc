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

#include "gemframe/pipeline.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gemframe {

namespace {

void Tally(const ScopeNode& node, PipelineStats* stats) {
  switch (node.type) {
    case ScopeNode::Type::kCondition:
      ++stats->conditions;
      if (node.frame.DefaultOnly()) {
        ++stats->default_only_frames;
      } else {
        ++stats->exception_frames;
      }
      for (size_t r = 0; r < kRuleCount; ++r) {
        if (node.frame.Has(static_cast<RuleId>(r))) ++stats->rule_frames[r];
      }
      break;
    case ScopeNode::Type::kRecommendation:
      ++stats->recommendations;
      break;
    case ScopeNode::Type::kJustification:
      ++stats->justifications;
      break;
    case ScopeNode::Type::kRoot:
      break;
  }
  for (const ScopeNode& child : node.children) Tally(child, stats);
}

}  // namespace

double PipelineStats::DefaultFraction() const {
  return frames() == 0 ? 0.0
                       : static_cast<double>(default_only_frames) / frames();
}

PipelineStats ComputeStats(const ScopeTree& tree) {
  PipelineStats stats;
  Tally(tree.root, &stats);
  return stats;
}

PipelineResult RunPipeline(std::string text, std::string doc_id,
                           const MarkerLexicon& lexicon,
                           const ResolverOptions& options) {
  PipelineResult result;
  result.doc = ParseDocument(std::move(text), std::move(doc_id));
  result.segments = SegmentDocument(result.doc, lexicon);
  result.tree = BuildScopeTree(result.doc, result.segments, lexicon, options);
  result.stats = ComputeStats(result.tree);
  return result;
}

std::string FormatStats(const PipelineStats& stats) {
  std::ostringstream out;
  out << "conditions: " << stats.conditions << "\n"
      << "recommendations: " << stats.recommendations << "\n"
      << "justifications: " << stats.justifications << "\n";
  char fraction[32];
  std::snprintf(fraction, sizeof(fraction), "%.1f%%",
                100.0 * stats.DefaultFraction());
  out << "frames: " << stats.frames()
      << " (default rules only: " << stats.default_only_frames << ", "
      << fraction << "; with exceptions: " << stats.exception_frames << ")\n";
  for (size_t r = 0; r < kRuleCount; ++r) {
    if (stats.rule_frames[r] == 0) continue;
    out << "  " << RuleName(static_cast<RuleId>(r)) << ": "
        << stats.rule_frames[r] << "\n";
  }
  return out.str();
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path,
                   std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::string DocIdFromPath(const std::filesystem::path& path) {
  return path.stem().string();
}

}  // namespace gemframe
