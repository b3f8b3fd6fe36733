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

#include "surveyor/selection.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "surveyor/errors.h"
#include "surveyor/text.h"

namespace surveyor::selection {

std::string_view SectionName(Section section) {
  switch (section) {
    case Section::kIntroduction:
      return "Introduction";
    case Section::kHistory:
      return "History";
    case Section::kKeyIdeas:
      return "Key Ideas";
    case Section::kVariations:
      return "Variations";
    case Section::kApplications:
      return "Applications";
  }
  return "";
}

Section ParseSection(std::string_view name) {
  for (Section s : kDefaultSections) {
    if (SectionName(s) == name) return s;
  }
  throw InvalidArgument("unknown section '" + std::string(name) + "'");
}

Query BuildQuery(std::string_view topic, std::optional<Section> section) {
  if (topic.empty()) throw InvalidArgument("query topic must be nonempty");
  Query q;
  q.topic = std::string(topic);
  q.section = section;
  if (!section || *section == Section::kIntroduction) {
    q.text = q.topic;
  } else {
    q.text = std::string(SectionName(*section)) + " of " + q.topic;
  }
  return q;
}

Query BuildQuery(std::string_view topic, std::string_view section_name) {
  return BuildQuery(topic, ParseSection(section_name));
}

std::string_view RankerName(RankerKind kind) {
  switch (kind) {
    case RankerKind::kTfidf:
      return "tfidf";
    case RankerKind::kSemantic:
      return "semantic";
    case RankerKind::kRelevance:
      return "relevance";
  }
  return "";
}

RankerKind ParseRanker(std::string_view name) {
  for (auto k : {RankerKind::kTfidf, RankerKind::kSemantic,
                 RankerKind::kRelevance}) {
    if (RankerName(k) == name) return k;
  }
  throw InvalidArgument("unknown ranker '" + std::string(name) + "'");
}

Ranking RankByScore(std::span<const Paragraph* const> paragraphs,
                    std::span<const double> scores, std::size_t limit,
                    RankerKind kind) {
  if (paragraphs.size() != scores.size()) {
    throw InvalidArgument("RankByScore: paragraph/score length mismatch");
  }
  std::vector<std::size_t> order(paragraphs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (paragraphs[a]->token_count != paragraphs[b]->token_count) {
      return paragraphs[a]->token_count > paragraphs[b]->token_count;
    }
    return paragraphs[a]->para_id < paragraphs[b]->para_id;
  });
  const std::size_t n = std::min(limit, order.size());
  Ranking out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({paragraphs[order[i]]->para_id, scores[order[i]],
                   static_cast<int>(i + 1), kind});
  }
  return out;
}

namespace {

void CheckRankArgs(const Corpus& corpus, std::size_t limit) {
  if (limit < 1) throw InvalidArgument("ranking limit must be >= 1");
  if (corpus.paragraph_count() == 0) {
    throw InvalidArgument("cannot rank an empty corpus");
  }
}

}  // namespace

Ranking TfidfRank(const Query& query, const Corpus& corpus, std::size_t limit,
                  const TfidfOptions& options) {
  CheckRankArgs(corpus, limit);
  const auto query_tokens = text::Tokenize(query.text);
  const auto words = text::WordSurfaces(query_tokens);
  // Sorted so the per-paragraph sum is evaluated in a fixed order.
  const std::set<std::string> terms(words.begin(), words.end());
  if (terms.empty()) {
    throw InvalidArgument("query '" + query.text + "' has no word tokens");
  }

  const auto paragraphs = AllParagraphs(corpus);
  const double n = static_cast<double>(paragraphs.size());
  std::vector<std::unordered_map<std::string, int>> tf(paragraphs.size());
  std::unordered_map<std::string, int> df;
  std::vector<int> lengths(paragraphs.size(), 0);
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    const auto tokens = text::Tokenize(paragraphs[i]->text);
    lengths[i] = static_cast<int>(tokens.size());
    for (const auto& t : tokens) {
      if (t.kind == text::TokenKind::kWord && terms.contains(t.surface)) {
        if (tf[i][t.surface]++ == 0) ++df[t.surface];
      }
    }
  }

  std::vector<double> scores(paragraphs.size(), 0.0);
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    double score = 0.0;
    for (const auto& term : terms) {
      auto it = tf[i].find(term);
      if (it == tf[i].end()) continue;
      const double idf = std::log((n + 1.0) / (df[term] + 1.0)) + 1.0;
      double freq = it->second;
      if (options.length_normalize && lengths[i] > 0) freq /= lengths[i];
      score += freq * idf;
    }
    scores[i] = score;
  }
  return RankByScore(paragraphs, scores, limit, RankerKind::kTfidf);
}

Ranking SemanticRank(const Query& query, const Corpus& corpus,
                     std::size_t limit, embedding::Embedder& embedder) {
  CheckRankArgs(corpus, limit);
  const auto paragraphs = AllParagraphs(corpus);
  std::vector<std::string> texts;
  texts.reserve(paragraphs.size() + 1);
  texts.push_back(query.text);
  for (const auto* p : paragraphs) texts.push_back(p->text);

  std::vector<embedding::EmbeddingVector> vectors;
  try {
    vectors = embedder.Embed(texts);
  } catch (const ProviderUnavailable& e) {
    throw RankerUnavailable(std::string("semantic ranker: ") + e.what());
  } catch (const ProtocolError& e) {
    throw RankerUnavailable(std::string("semantic ranker: ") + e.what());
  }
  if (vectors.size() != texts.size()) {
    throw RankerUnavailable("semantic ranker: embedder returned " +
                            std::to_string(vectors.size()) + " vectors for " +
                            std::to_string(texts.size()) + " texts");
  }
  std::vector<double> scores(paragraphs.size());
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    scores[i] = embedding::Cosine(vectors[0], vectors[i + 1]);
  }
  return RankByScore(paragraphs, scores, limit, RankerKind::kSemantic);
}

Ranking RelevanceRank(const Query& query, const Corpus& corpus,
                      std::size_t limit, PairScorer& scorer,
                      std::size_t batch_size) {
  CheckRankArgs(corpus, limit);
  batch_size = std::clamp<std::size_t>(batch_size, 1, kMaxPairBatch);
  const auto paragraphs = AllParagraphs(corpus);
  std::vector<double> scores;
  scores.reserve(paragraphs.size());
  for (std::size_t begin = 0; begin < paragraphs.size(); begin += batch_size) {
    const std::size_t end = std::min(paragraphs.size(), begin + batch_size);
    std::vector<std::string> passages;
    for (std::size_t i = begin; i < end; ++i) {
      passages.push_back(paragraphs[i]->text);
    }
    std::vector<double> batch;
    try {
      batch = scorer.Score(query.text, passages);
    } catch (const ProviderUnavailable& e) {
      throw RankerUnavailable(std::string("relevance ranker: ") + e.what());
    }
    if (batch.size() != passages.size()) {
      throw ProtocolError("pair scorer returned " +
                          std::to_string(batch.size()) + " scores for " +
                          std::to_string(passages.size()) + " passages");
    }
    for (double s : batch) {
      if (!(s >= 0.0 && s <= 1.0)) {
        throw ProtocolError("pair scorer returned out-of-range score " +
                            std::to_string(s));
      }
      scores.push_back(s);
    }
  }
  return RankByScore(paragraphs, scores, limit, RankerKind::kRelevance);
}

std::vector<BudgetSlice> SelectBudget(const Ranking& ranked,
                                      const TokenCountLookup& token_count,
                                      const SelectionBudget& budget) {
  if (budget.max_tokens < 1) {
    throw InvalidArgument("budget max_tokens must be >= 1");
  }
  std::vector<BudgetSlice> out;
  int used = 0;
  for (const auto& sp : ranked) {
    const int remaining = budget.max_tokens - used;
    if (remaining <= 0) break;
    const int count = token_count(sp.para_id);
    if (count <= remaining) {
      out.push_back({sp.para_id, count, false});
      used += count;
      continue;
    }
    if (budget.allow_truncation) {
      out.push_back({sp.para_id, remaining, true});
      used += remaining;
    }
    break;
  }
  return out;
}

std::vector<BudgetSlice> SelectBudget(const Ranking& ranked,
                                      const Corpus& corpus,
                                      const SelectionBudget& budget) {
  const ParagraphIndex index(corpus);
  return SelectBudget(
      ranked,
      [&](const std::string& id) { return index.at(id).token_count; },
      budget);
}

std::string SliceText(const Paragraph& paragraph, int token_end) {
  if (token_end >= paragraph.token_count) return paragraph.text;
  if (token_end <= 0) return {};
  const auto tokens = text::Tokenize(paragraph.text);
  const auto& last = tokens.at(static_cast<std::size_t>(token_end) - 1);
  return paragraph.text.substr(0, last.offset + last.length);
}

ParagraphIndex::ParagraphIndex(const Corpus& corpus) {
  for (const auto* p : AllParagraphs(corpus)) by_id_.emplace(p->para_id, p);
}

const Paragraph& ParagraphIndex::at(std::string_view para_id) const {
  auto it = by_id_.find(para_id);
  if (it == by_id_.end()) {
    throw InvalidArgument("unknown para_id '" + std::string(para_id) + "'");
  }
  return *it->second;
}

bool ParagraphIndex::contains(std::string_view para_id) const {
  return by_id_.find(para_id) != by_id_.end();
}

Corpus Restrict(const Corpus& corpus, std::span<const std::string> para_ids) {
  const std::set<std::string, std::less<>> keep(para_ids.begin(),
                                                para_ids.end());
  Corpus out;
  out.topic = corpus.topic;
  out.created_at = corpus.created_at;
  out.source_mode = corpus.source_mode;
  for (const auto& doc : corpus.documents) {
    SourceDocument d = doc;
    d.paragraphs.clear();
    for (const auto& p : doc.paragraphs) {
      if (keep.contains(p.para_id)) d.paragraphs.push_back(p);
    }
    if (!d.paragraphs.empty()) out.documents.push_back(std::move(d));
  }
  return out;
}

}  // namespace surveyor::selection
