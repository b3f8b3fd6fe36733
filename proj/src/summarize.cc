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

#include "surveyor/summarize.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <spdlog/spdlog.h>

#include "surveyor/errors.h"

namespace surveyor::summarize {

std::string_view EngineName(Engine engine) {
  switch (engine) {
    case Engine::kFirstK:
      return "first_k";
    case Engine::kTextRank:
      return "textrank";
    case Engine::kMmr:
      return "mmr";
    case Engine::kAbstractive:
      return "abstractive";
  }
  return "";
}

Engine ParseEngine(std::string_view name) {
  for (auto e : {Engine::kFirstK, Engine::kTextRank, Engine::kMmr,
                 Engine::kAbstractive}) {
    if (EngineName(e) == name) return e;
  }
  throw InvalidArgument("unknown engine '" + std::string(name) + "'");
}

TrimResult TrimToWords(std::string_view text, int word_min, int word_max) {
  TrimResult out;
  const int total = text::CountWords(text);
  if (total <= word_max) {
    out.text = std::string(text);
    out.word_count = total;
    out.below_minimum = total < word_min;
    return out;
  }
  const auto sentences = text::SplitSentences(text);
  int words = 0;
  std::size_t end = 0;
  for (const auto& s : sentences) {
    const int w = text::CountWords(s.text);
    if (words + w > word_max) break;
    words += w;
    end = s.end;
  }
  if (end == 0) {
    out.text = text::FirstWords(text, word_max);
    out.word_count = text::CountWords(out.text);
    out.hard_cut = true;
  } else {
    out.text = std::string(text.substr(0, end));
    out.word_count = words;
  }
  out.below_minimum = out.word_count < word_min;
  return out;
}

namespace {

// Joins the chosen sentences in original order, dropping trailing ones
// that would push the total past word_max.
SectionSummary Assemble(std::span<const text::Sentence> sentences,
                        std::vector<int> indices, Engine engine, int word_min,
                        int word_max) {
  std::sort(indices.begin(), indices.end());
  SectionSummary out;
  out.engine = engine;
  int words = 0;
  for (int i : indices) {
    const auto& s = sentences[static_cast<std::size_t>(i)];
    const int w = text::CountWords(s.text);
    if (words + w > word_max) {
      if (out.source_indices.empty()) {
        out.text = text::FirstWords(s.text, word_max);
        words = text::CountWords(out.text);
        out.source_indices.push_back(i);
      }
      break;
    }
    if (!out.text.empty()) out.text += ' ';
    out.text += s.text;
    words += w;
    out.source_indices.push_back(i);
  }
  out.word_count = words;
  out.below_minimum = words < word_min;
  return out;
}

constexpr int kNoBand = 1 << 30;

}  // namespace

SectionSummary FirstK(std::span<const text::Sentence> sentences, int k) {
  if (k < 1) throw InvalidArgument("first_k: k must be >= 1");
  const int n = std::min<int>(k, static_cast<int>(sentences.size()));
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  return Assemble(sentences, idx, Engine::kFirstK, 0, kNoBand);
}

std::vector<std::vector<double>> TextRankSimilarity(
    std::span<const text::Sentence> sentences) {
  const std::size_t n = sentences.size();
  std::vector<std::set<std::string>> sets(n);
  std::vector<std::size_t> lengths(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto words = text::WordSurfaces(sentences[i].tokens);
    lengths[i] = words.size();
    sets[i] = std::set<std::string>(words.begin(), words.end());
  }
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (lengths[i] == 0 || lengths[j] == 0) continue;
      const double denom = std::log(static_cast<double>(lengths[i])) +
                           std::log(static_cast<double>(lengths[j]));
      if (denom <= 0.0) continue;
      std::size_t shared = 0;
      for (const auto& word : sets[i]) shared += sets[j].count(word);
      w[i][j] = w[j][i] = static_cast<double>(shared) / denom;
    }
  }
  return w;
}

PageRankResult WeightedPageRank(const std::vector<std::vector<double>>& weights,
                                const TextRankOptions& options) {
  const std::size_t n = weights.size();
  PageRankResult result;
  if (n == 0) return result;
  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) out_weight[j] += weights[j][k];
    }
  }
  std::vector<double> x(n, inv_n);
  std::vector<double> next(n);
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out_weight[j] <= 0.0) dangling += x[j];
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double in = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || out_weight[j] <= 0.0) continue;
        in += weights[j][i] / out_weight[j] * x[j];
      }
      next[i] = (1.0 - d) * inv_n + d * (in + dangling * inv_n);
      delta = std::max(delta, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    result.iterations = iter;
    if (delta < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= sum;
  result.scores = std::move(x);
  return result;
}

std::vector<int> TopIndices(std::span<const double> scores, int count) {
  // Scores are compared on a 1e-12 grid so that summation noise in
  // symmetric graphs cannot override the index tie-break.
  std::vector<double> keys(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    keys[i] = std::round(scores[i] * 1e12);
  }
  std::vector<int> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] > keys[static_cast<std::size_t>(b)];
  });
  idx.resize(std::min<std::size_t>(idx.size(),
                                   static_cast<std::size_t>(std::max(0, count))));
  return idx;
}

SectionSummary TextRank(std::span<const text::Sentence> sentences, int out_k,
                        const TextRankOptions& options) {
  if (sentences.empty()) throw InvalidArgument("textrank: no sentences");
  const auto pr = WeightedPageRank(TextRankSimilarity(sentences), options);
  return Assemble(sentences, TopIndices(pr.scores, out_k), Engine::kTextRank,
                  0, kNoBand);
}

std::vector<int> MmrOrder(std::span<const embedding::EmbeddingVector> sentences,
                          const embedding::EmbeddingVector& query,
                          double lambda, int out_k) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw InvalidArgument("mmr: lambda must lie in [0, 1]");
  }
  const std::size_t n = sentences.size();
  const std::size_t want =
      std::min(n, static_cast<std::size_t>(std::max(0, out_k)));
  std::vector<double> relevance(n);
  for (std::size_t i = 0; i < n; ++i) {
    relevance[i] = embedding::Cosine(sentences[i], query);
  }
  // Running max similarity to the selected set.
  std::vector<double> redundancy(n, 0.0);
  std::vector<bool> taken(n, false);
  std::vector<int> order;
  while (order.size() < want) {
    std::size_t best = n;
    double best_score = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double score =
          lambda * relevance[i] - (1.0 - lambda) * redundancy[i];
      if (best == n || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    taken[best] = true;
    order.push_back(static_cast<int>(best));
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double s = embedding::Cosine(sentences[i], sentences[best]);
      if (order.size() == 1 || s > redundancy[i]) redundancy[i] = s;
    }
  }
  return order;
}

SectionSummary Mmr(std::span<const text::Sentence> sentences,
                   const std::string& query, embedding::Embedder& embedder,
                   double lambda, int out_k) {
  if (sentences.empty()) throw InvalidArgument("mmr: no sentences");
  std::vector<std::string> texts;
  texts.reserve(sentences.size() + 1);
  for (const auto& s : sentences) texts.push_back(s.text);
  texts.push_back(query);
  auto vectors = embedder.Embed(texts);
  const auto query_vec = vectors.back();
  vectors.pop_back();
  return Assemble(sentences, MmrOrder(vectors, query_vec, lambda, out_k),
                  Engine::kMmr, 0, kNoBand);
}

SectionSummary Abstractive(const std::string& selected_text,
                           std::span<const text::Sentence> fallback_sentences,
                           Generator* generator,
                           const SummaryOptions& options) {
  std::string reason;
  if (generator == nullptr) {
    reason = "no generator configured";
  } else {
    try {
      const std::string generated =
          generator->Generate(selected_text, options.generate_max_tokens);
      const auto trimmed =
          TrimToWords(generated, options.word_min, options.word_max);
      SectionSummary out;
      out.engine = Engine::kAbstractive;
      out.text = trimmed.text;
      out.word_count = trimmed.word_count;
      out.below_minimum = trimmed.below_minimum;
      return out;
    } catch (const ProviderUnavailable& e) {
      reason = e.what();
    } catch (const ProtocolError& e) {
      reason = e.what();
    }
  }
  spdlog::warn("abstractive summary downgraded to textrank: {}", reason);
  if (fallback_sentences.empty()) {
    SectionSummary empty;
    empty.engine = Engine::kTextRank;
    empty.downgraded = true;
    empty.below_minimum = true;
    return empty;
  }
  const auto tr = WeightedPageRank(TextRankSimilarity(fallback_sentences),
                                   options.textrank);
  SectionSummary out =
      Assemble(fallback_sentences, TopIndices(tr.scores, options.out_k),
               Engine::kTextRank, options.word_min, options.word_max);
  out.downgraded = true;
  return out;
}

SectionSummary Summarize(Engine engine, const selection::Query& query,
                         std::span<const text::Sentence> sentences,
                         const std::string& selected_text,
                         const SummaryOptions& options,
                         embedding::Embedder& embedder, Generator* generator) {
  if (options.word_min >= options.word_max) {
    throw InvalidArgument("word_min must be below word_max");
  }
  if (engine == Engine::kAbstractive) {
    return Abstractive(selected_text, sentences, generator, options);
  }
  if (sentences.empty()) {
    throw InvalidArgument("extractive engines need at least one sentence");
  }
  std::vector<int> picks;
  switch (engine) {
    case Engine::kFirstK:
      picks = FirstK(sentences, options.first_k).source_indices;
      break;
    case Engine::kTextRank: {
      const auto pr =
          WeightedPageRank(TextRankSimilarity(sentences), options.textrank);
      picks = TopIndices(pr.scores, options.out_k);
      break;
    }
    case Engine::kMmr:
      picks = Mmr(sentences, query.text, embedder, options.mmr_lambda,
                  options.out_k)
                  .source_indices;
      break;
    case Engine::kAbstractive:
      break;
  }
  return Assemble(sentences, std::move(picks), engine, options.word_min,
                  options.word_max);
}

}  // namespace surveyor::summarize
