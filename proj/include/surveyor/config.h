// Copyright 2026 The Surveyor Authors.
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

#ifndef SURVEYOR_CONFIG_H_
#define SURVEYOR_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "surveyor/model_client.h"
#include "surveyor/selection.h"
#include "surveyor/summarize.h"

namespace surveyor {

enum class SelectionMode { kRetrieval, kClustering };

std::string_view SelectionModeName(SelectionMode mode);
SelectionMode ParseSelectionMode(std::string_view name);

enum class EmbedderKind { kFallback, kRemote };

// Everything that shapes a survey run. Loaded from an INI-style file:
//
//   [selection]  ranker, mode, top_l, pool_l, length_normalize
//   [budget]     max_tokens, allow_truncation
//   [clustering] k
//   [summary]    engine, word_min, word_max, first_k, sentences, damping,
//                tolerance, max_iter, mmr_lambda, generate_max_tokens
//   [models]     embedder (fallback|remote), server, timeout_ms, max_batch
//   [ingest]     min_paragraph_tokens
//
// Missing keys keep their defaults; unknown sections or keys are errors.
struct PipelineConfig {
  selection::RankerKind ranker = selection::RankerKind::kTfidf;
  SelectionMode mode = SelectionMode::kRetrieval;
  std::size_t top_l = 10;
  std::size_t pool_l = 50;
  bool length_normalize = false;

  selection::SelectionBudget budget;
  std::size_t clusters = 5;

  summarize::Engine engine = summarize::Engine::kTextRank;
  summarize::SummaryOptions summary;

  EmbedderKind embedder = EmbedderKind::kFallback;
  model::Endpoint server;

  int min_paragraph_tokens = 10;
};

// Throws InvalidArgument describing the offending key.
PipelineConfig ParseConfig(std::string_view ini);
PipelineConfig LoadConfig(const std::filesystem::path& path);

// Replaces the server URL with $SURVEYOR_MODEL_SERVER when set.
void ApplyEnvironment(PipelineConfig& config);

// Fully-populated INI rendering in a fixed key order. Two configs with the
// same effective values render identically.
std::string CanonicalConfig(const PipelineConfig& config);
std::string ConfigHash(const PipelineConfig& config);

}  // namespace surveyor

#endif  // SURVEYOR_CONFIG_H_
