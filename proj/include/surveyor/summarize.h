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

#ifndef SURVEYOR_SUMMARIZE_H_
#define SURVEYOR_SUMMARIZE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surveyor/embedding.h"
#include "surveyor/selection.h"
#include "surveyor/text.h"

namespace surveyor::summarize {

enum class Engine { kFirstK, kTextRank, kMmr, kAbstractive };

std::string_view EngineName(Engine engine);
Engine ParseEngine(std::string_view name);  // throws InvalidArgument

struct SectionSummary {
  std::string text;
  Engine engine = Engine::kFirstK;
  // Indices into the input sentences, strictly increasing. Empty for
  // abstractive output.
  std::vector<int> source_indices;
  int word_count = 0;
  bool below_minimum = false;
  // Set when an abstractive request fell back to TextRank.
  bool downgraded = false;

  bool operator==(const SectionSummary&) const = default;
};

struct TrimResult {
  std::string text;
  int word_count = 0;
  bool below_minimum = false;
  bool hard_cut = false;
};

// Cuts text longer than word_max at the last sentence boundary that keeps
// it within word_max; only when the first sentence alone is too long is it
// hard-cut to word_max words. Shorter text is returned unchanged, flagged
// when below word_min.
TrimResult TrimToWords(std::string_view text, int word_min, int word_max);

SectionSummary FirstK(std::span<const text::Sentence> sentences, int k);

struct TextRankOptions {
  double damping = 0.85;
  double tolerance = 1e-6;
  int max_iter = 100;
};

// w(i, j) = |shared distinct words| / (ln|Si| + ln|Sj|), with |S| the
// number of word tokens; no edge when the denominator is not positive.
std::vector<std::vector<double>> TextRankSimilarity(
    std::span<const text::Sentence> sentences);

struct PageRankResult {
  std::vector<double> scores;  // sums to 1
  int iterations = 0;
  bool converged = false;
};

// Damped PageRank on a weighted undirected graph. Nodes without edges
// spread their mass uniformly.
PageRankResult WeightedPageRank(const std::vector<std::vector<double>>& weights,
                                const TextRankOptions& options = {});

SectionSummary TextRank(std::span<const text::Sentence> sentences, int out_k,
                        const TextRankOptions& options = {});

// Indices of the top `count` scores (descending, index tie-break; scores
// within 1e-12 count as equal).
std::vector<int> TopIndices(std::span<const double> scores, int count);

// Greedy maximal marginal relevance. Returns indices in pick order.
std::vector<int> MmrOrder(std::span<const embedding::EmbeddingVector> sentences,
                          const embedding::EmbeddingVector& query,
                          double lambda, int out_k);

SectionSummary Mmr(std::span<const text::Sentence> sentences,
                   const std::string& query, embedding::Embedder& embedder,
                   double lambda, int out_k);

class Generator {
 public:
  virtual ~Generator() = default;
  // Throws ProviderUnavailable when the backend cannot be reached.
  virtual std::string Generate(const std::string& text, int max_tokens) = 0;
};

struct SummaryOptions {
  int word_min = 50;
  int word_max = 150;
  int first_k = 3;
  int out_k = 5;  // sentences kept by TextRank and MMR
  TextRankOptions textrank;
  double mmr_lambda = 0.5;
  int generate_max_tokens = 256;
};

// Generates from `selected_text`; on a provider failure falls back to
// TextRank over `fallback_sentences` and marks the summary downgraded.
SectionSummary Abstractive(const std::string& selected_text,
                           std::span<const text::Sentence> fallback_sentences,
                           Generator* generator, const SummaryOptions& options);

// Runs `engine` and enforces the word band. Extractive output is trimmed a
// whole sentence at a time so source_indices stay exact.
SectionSummary Summarize(Engine engine, const selection::Query& query,
                         std::span<const text::Sentence> sentences,
                         const std::string& selected_text,
                         const SummaryOptions& options,
                         embedding::Embedder& embedder, Generator* generator);

}  // namespace surveyor::summarize

#endif  // SURVEYOR_SUMMARIZE_H_
