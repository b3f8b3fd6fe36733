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

#ifndef SURVEYOR_SELECTION_H_
#define SURVEYOR_SELECTION_H_

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surveyor/corpus.h"
#include "surveyor/embedding.h"

namespace surveyor::selection {

enum class Section { kIntroduction, kHistory, kKeyIdeas, kVariations, kApplications };

inline constexpr std::array<Section, 5> kDefaultSections = {
    Section::kIntroduction, Section::kHistory, Section::kKeyIdeas,
    Section::kVariations, Section::kApplications};

std::string_view SectionName(Section section);
// Accepts the display name ("Key Ideas"); throws InvalidArgument otherwise.
Section ParseSection(std::string_view name);

struct Query {
  std::string topic;
  std::optional<Section> section;
  std::string text;

  bool operator==(const Query&) const = default;
};

// Introduction (or no section) queries the bare topic; every other section
// renders as "<Section> of <topic>".
Query BuildQuery(std::string_view topic, std::optional<Section> section = {});
Query BuildQuery(std::string_view topic, std::string_view section_name);

enum class RankerKind { kTfidf, kSemantic, kRelevance };

std::string_view RankerName(RankerKind kind);
RankerKind ParseRanker(std::string_view name);

struct ScoredParagraph {
  std::string para_id;
  double score = 0.0;
  int rank = 0;  // 1-based
  RankerKind ranker = RankerKind::kTfidf;

  bool operator==(const ScoredParagraph&) const = default;
};

using Ranking = std::vector<ScoredParagraph>;

// Orders (paragraph, score) pairs by score descending, then token_count
// descending, then para_id ascending, keeps the first min(limit, n) and
// assigns ranks 1..n.
Ranking RankByScore(std::span<const Paragraph* const> paragraphs,
                    std::span<const double> scores, std::size_t limit,
                    RankerKind kind);

struct TfidfOptions {
  // Divide term frequency by paragraph length.
  bool length_normalize = false;
};

// score(p) = sum over distinct query word tokens t of tf(t, p) * idf(t),
// idf(t) = ln((N + 1) / (df(t) + 1)) + 1. Throws InvalidArgument when the
// corpus is empty, limit < 1 or the query has no word tokens.
Ranking TfidfRank(const Query& query, const Corpus& corpus, std::size_t limit,
                  const TfidfOptions& options = {});

// Cosine between the query and each paragraph embedding, computed from a
// single Embed call. Embedder failures surface as RankerUnavailable.
Ranking SemanticRank(const Query& query, const Corpus& corpus,
                     std::size_t limit, embedding::Embedder& embedder);

// Scores (query, passage) pairs for relevance in [0, 1].
class PairScorer {
 public:
  virtual ~PairScorer() = default;
  // Throws ProviderUnavailable when unreachable.
  virtual std::vector<double> Score(const std::string& query,
                                    std::span<const std::string> passages) = 0;
};

inline constexpr std::size_t kMaxPairBatch = 64;

// Sends at most kMaxPairBatch passages per Score call. A score outside
// [0, 1] or a short reply is a ProtocolError; an unreachable scorer is a
// RankerUnavailable.
Ranking RelevanceRank(const Query& query, const Corpus& corpus,
                      std::size_t limit, PairScorer& scorer,
                      std::size_t batch_size = kMaxPairBatch);

struct SelectionBudget {
  int max_tokens = 1024;
  bool allow_truncation = true;
};

// Tokens [0, token_end) of a paragraph.
struct BudgetSlice {
  std::string para_id;
  int token_end = 0;
  bool truncated = false;

  bool operator==(const BudgetSlice&) const = default;
};

using TokenCountLookup = std::function<int(const std::string& para_id)>;

// Walks the ranking taking whole paragraphs while they fit. The first one
// that overflows is cut to fill the budget exactly when truncation is on;
// either way the walk stops there.
std::vector<BudgetSlice> SelectBudget(const Ranking& ranked,
                                      const TokenCountLookup& token_count,
                                      const SelectionBudget& budget);
std::vector<BudgetSlice> SelectBudget(const Ranking& ranked,
                                      const Corpus& corpus,
                                      const SelectionBudget& budget);

// Paragraph text cut at the end of its `token_end`-th token.
std::string SliceText(const Paragraph& paragraph, int token_end);

// para_id -> paragraph lookup over a corpus.
class ParagraphIndex {
 public:
  explicit ParagraphIndex(const Corpus& corpus);
  const Paragraph& at(std::string_view para_id) const;  // throws InvalidArgument
  bool contains(std::string_view para_id) const;

 private:
  std::map<std::string, const Paragraph*, std::less<>> by_id_;
};

// Corpus restricted to the given para_ids (documents keep their order).
Corpus Restrict(const Corpus& corpus, std::span<const std::string> para_ids);

}  // namespace surveyor::selection

#endif  // SURVEYOR_SELECTION_H_
