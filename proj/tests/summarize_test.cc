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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "surveyor/errors.h"

namespace surveyor::summarize {
namespace {

using text::Sentence;

std::vector<Sentence> Sentences(const std::vector<std::string>& texts) {
  std::vector<Sentence> out;
  for (const auto& t : texts) {
    auto s = text::SplitSentences(t);
    EXPECT_EQ(s.size(), 1u) << t;
    out.push_back(s[0]);
  }
  return out;
}

std::string Words(int n, const std::string& stem = "w", bool period = true) {
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += (i == 0 ? "S" : stem) + std::to_string(i);
  }
  return out + (period ? "." : "");
}

TEST(TrimToWordsTest, WithinBandUnchanged) {
  const std::string t = Words(140);
  const auto r = TrimToWords(t, 50, 150);
  EXPECT_EQ(r.text, t);
  EXPECT_EQ(r.word_count, 140);
  EXPECT_FALSE(r.below_minimum);
}

TEST(TrimToWordsTest, DropsWholeSentences) {
  const std::string t = Words(60, "a") + " " + Words(60, "b") + " " + Words(60, "c");
  const auto r = TrimToWords(t, 50, 150);
  EXPECT_EQ(r.text, Words(60, "a") + " " + Words(60, "b"));
  EXPECT_EQ(r.word_count, 120);
  EXPECT_FALSE(r.hard_cut);
}

TEST(TrimToWordsTest, SingleLongSentenceIsHardCut) {
  const auto r = TrimToWords(Words(200), 50, 150);
  EXPECT_EQ(r.word_count, 150);
  EXPECT_TRUE(r.hard_cut);
  EXPECT_EQ(r.text, Words(150, "w", false));
}

TEST(TrimToWordsTest, ShortTextFlagged) {
  EXPECT_TRUE(TrimToWords("Just a few words.", 50, 150).below_minimum);
}

TEST(FirstKTest, Examples) {
  std::vector<std::string> texts;
  for (int i = 0; i < 10; ++i) texts.push_back("Sentence number " + std::to_string(i) + ".");
  const auto ten = Sentences(texts);
  EXPECT_EQ(FirstK(ten, 3).source_indices, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(FirstK(ten, 3).text,
            "Sentence number 0. Sentence number 1. Sentence number 2.");
  EXPECT_EQ(FirstK(ten, 1).source_indices, (std::vector<int>{0}));
  const auto two = Sentences({"One here.", "Two here."});
  EXPECT_EQ(FirstK(two, 5).source_indices, (std::vector<int>{0, 1}));
}

TEST(TextRankTest, SingleSentence) {
  const auto s = Sentences({"Only one sentence here."});
  EXPECT_EQ(TextRank(s, 3).text, "Only one sentence here.");
}

TEST(TextRankTest, SymmetricGraphFallsBackToIndexOrder) {
  // Every pair shares exactly "common" and sentences have equal length.
  const auto s = Sentences({"Common alpha beta.", "Common gamma delta.",
                            "Common eps zeta.", "Common eta theta."});
  const auto pr = WeightedPageRank(TextRankSimilarity(s));
  for (double v : pr.scores) EXPECT_NEAR(v, 0.25, 1e-12);
  EXPECT_EQ(TextRank(s, 2).source_indices, (std::vector<int>{0, 1}));
}

TEST(TextRankTest, HubSentenceWins) {
  const auto s = Sentences({"Apple banana cherry.", "Apple date fig grape kiwi.",
                            "Date lemon mango.", "Grape nut olive."});
  const auto w = TextRankSimilarity(s);
  std::vector<std::vector<std::string>> words;
  for (const auto& x : s) words.push_back(text::WordSurfaces(x.tokens));
  const auto want_w = oracle::TextRankWeights(words);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(w[i][j], want_w[i][j], 1e-15);
  }
  const auto pr = WeightedPageRank(w);
  const auto want = oracle::DensePageRank(want_w, 0.85);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(pr.scores[i], want[i], 1e-5);
  EXPECT_EQ(TopIndices(pr.scores, 1), (std::vector<int>{1}));
  EXPECT_TRUE(pr.converged);
}

TEST(TextRankTest, IsolatedNodesShareDanglingMass) {
  const std::vector<std::vector<double>> w = {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
  const auto pr = WeightedPageRank(w);
  const auto want = oracle::DensePageRank(w, 0.85);
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(pr.scores[i], want[i], 1e-5);
    total += pr.scores[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

embedding::EmbeddingVector V(std::vector<double> v) {
  return embedding::Normalized({std::move(v)});
}

TEST(MmrTest, LambdaOneIsRelevanceOrder) {
  const std::vector<embedding::EmbeddingVector> s = {
      V({1, 0, 0}), V({0.9, 0.1, 0}), V({0, 1, 0}), V({0.5, 0.5, 0.1})};
  const auto q = V({1, 0.2, 0});
  std::vector<double> rel;
  for (const auto& x : s) rel.push_back(embedding::Cosine(x, q));
  std::vector<int> want(s.size());
  std::iota(want.begin(), want.end(), 0);
  std::stable_sort(want.begin(), want.end(),
                   [&](int a, int b) { return rel[a] > rel[b]; });
  EXPECT_EQ(MmrOrder(s, q, 1.0, 4), want);
}

TEST(MmrTest, DuplicateIsNotPickedSecond) {
  const std::vector<embedding::EmbeddingVector> s = {
      V({1, 0.1}), V({1, 0.1}), V({1, -0.5})};
  const auto q = V({1, 0});
  // Hand trace at lambda 0.5: the first pick is sentence 0 (tie with its
  // copy, lower index). The copy then scores 0.5*rel0 - 0.5*1.0 and the
  // third sentence 0.5*rel2 - 0.5*cos(s2, s0).
  const double rel0 = embedding::Cosine(s[0], q);
  const double rel2 = embedding::Cosine(s[2], q);
  const double copy = 0.5 * rel0 - 0.5;
  const double other = 0.5 * rel2 - 0.5 * embedding::Cosine(s[2], s[0]);
  ASSERT_GT(other, copy);
  EXPECT_EQ(MmrOrder(s, q, 0.5, 3), (std::vector<int>{0, 2, 1}));
}

TEST(MmrTest, AllSentencesKeepOriginalOrder) {
  embedding::FallbackEmbedder e;
  const auto s = Sentences({"Zebra stripes.", "Neural networks learn.",
                            "Neural nets train."});
  EXPECT_EQ(Mmr(s, "neural networks", e, 0.5, 10).source_indices,
            (std::vector<int>{0, 1, 2}));
}

TEST(MmrTest, LambdaOutOfRange) {
  const std::vector<embedding::EmbeddingVector> s = {V({1, 0})};
  EXPECT_THROW(MmrOrder(s, V({1, 0}), 1.5, 1), InvalidArgument);
  EXPECT_THROW(MmrOrder(s, V({1, 0}), -0.1, 1), InvalidArgument);
}

class EchoGenerator : public Generator {
 public:
  explicit EchoGenerator(int words) : words_(words) {}
  std::string Generate(const std::string& text, int) override {
    return text::FirstWords(text, words_);
  }

 private:
  int words_;
};

class FixedGenerator : public Generator {
 public:
  explicit FixedGenerator(std::string out) : out_(std::move(out)) {}
  std::string Generate(const std::string&, int) override { return out_; }

 private:
  std::string out_;
};

class DownGenerator : public Generator {
 public:
  std::string Generate(const std::string&, int) override {
    throw ProviderUnavailable("connection refused");
  }
};

TEST(AbstractiveTest, EchoesFirstWords) {
  std::string input;
  for (int i = 0; i < 100; ++i) input += "word" + std::to_string(i) + " ";
  EchoGenerator gen(60);
  const auto s = Abstractive(input, {}, &gen, {});
  EXPECT_EQ(s.text, text::FirstWords(input, 60));
  EXPECT_EQ(s.word_count, 60);
  EXPECT_EQ(s.engine, Engine::kAbstractive);
  EXPECT_FALSE(s.downgraded);
}

TEST(AbstractiveTest, UnreachableDowngradesToTextRank) {
  const auto sents = Sentences({"Apple banana cherry.", "Apple date fig grape kiwi.",
                                "Date lemon mango.", "Grape nut olive."});
  DownGenerator gen;
  SummaryOptions options;
  const auto s = Abstractive("ignored", sents, &gen, options);
  EXPECT_TRUE(s.downgraded);
  EXPECT_EQ(s.engine, Engine::kTextRank);
  EXPECT_EQ(s.text, TextRank(sents, options.out_k).text);
  EXPECT_TRUE(Abstractive("ignored", sents, nullptr, options).downgraded);
}

TEST(AbstractiveTest, LongOutputTrimmedAtSentenceBoundary) {
  std::string out;
  for (int i = 0; i < 40; ++i) out += Words(10, "g" + std::to_string(i)) + " ";
  FixedGenerator gen(out);
  const auto s = Abstractive("x", {}, &gen, {});
  EXPECT_LE(s.word_count, 150);
  EXPECT_EQ(s.word_count, 150);
  EXPECT_EQ(s.text.back(), '.');
}

TEST(SummarizeTest, EveryEngineRespectsWordMax) {
  std::vector<std::string> texts;
  for (int i = 0; i < 12; ++i) texts.push_back(Words(25, "t" + std::to_string(i)));
  const auto sents = Sentences(texts);
  embedding::FallbackEmbedder e;
  FixedGenerator gen(texts[0] + " " + texts[1]);
  SummaryOptions options;
  for (Engine engine : {Engine::kFirstK, Engine::kTextRank, Engine::kMmr,
                        Engine::kAbstractive}) {
    const auto s = Summarize(engine, selection::BuildQuery("T"), sents, "x",
                             options, e, &gen);
    EXPECT_LE(s.word_count, 150) << EngineName(engine);
    EXPECT_EQ(s.word_count, text::CountWords(s.text));
  }
}

TEST(EngineTest, Names) {
  for (Engine e : {Engine::kFirstK, Engine::kTextRank, Engine::kMmr,
                   Engine::kAbstractive}) {
    EXPECT_EQ(ParseEngine(EngineName(e)), e);
  }
  EXPECT_THROW(ParseEngine("lead"), InvalidArgument);
}

}  // namespace
}  // namespace surveyor::summarize
