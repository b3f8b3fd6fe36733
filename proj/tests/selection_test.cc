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
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "surveyor/embedding.h"
#include "surveyor/errors.h"
#include "surveyor/text.h"

namespace surveyor::selection {
namespace {

Corpus MakeCorpus(const std::vector<std::pair<std::string, std::string>>& ps) {
  Corpus c;
  c.topic = "t";
  SourceDocument doc;
  doc.doc_id = "d";
  int pos = 0;
  for (const auto& [id, t] : ps) {
    doc.paragraphs.push_back(
        {id, "d", pos++, t, static_cast<int>(text::Tokenize(t).size())});
  }
  c.documents.push_back(doc);
  return c;
}

std::vector<std::string> Ids(const Ranking& r) {
  std::vector<std::string> out;
  for (const auto& s : r) out.push_back(s.para_id);
  return out;
}

TEST(BuildQueryTest, Examples) {
  EXPECT_EQ(BuildQuery("BERT", Section::kHistory).text, "History of BERT");
  EXPECT_EQ(BuildQuery("BERT").text, "BERT");
  EXPECT_EQ(BuildQuery("BERT", Section::kIntroduction).text, "BERT");
  EXPECT_EQ(BuildQuery("Text Summarization", "Applications").text,
            "Applications of Text Summarization");
  EXPECT_EQ(BuildQuery("BERT", "Key Ideas").text, "Key Ideas of BERT");
  EXPECT_THROW(BuildQuery("BERT", "Conclusion"), InvalidArgument);
}

const std::vector<std::pair<std::string, std::string>> kThree = {
    {"P1", "neural network models learn representations from data quickly "
           "today here now"},
    {"P2", "cooking pasta recipes require salted boiling water and fresh "
           "basil leaves"},
    {"P3", "network protocols route packets across links with retransmission "
           "and congestion control"}};

// Textbook tf-idf over whitespace words, computed independently.
std::map<std::string, double> HandTfidf(
    const std::vector<std::pair<std::string, std::string>>& ps,
    const std::vector<std::string>& query) {
  std::vector<std::vector<std::string>> docs;
  for (const auto& [id, t] : ps) {
    std::istringstream in(t);
    docs.emplace_back(std::istream_iterator<std::string>(in),
                      std::istream_iterator<std::string>());
  }
  std::map<std::string, double> out;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    double score = 0.0;
    for (const auto& q : query) {
      int df = 0;
      for (const auto& doc : docs) {
        df += std::count(doc.begin(), doc.end(), q) > 0;
      }
      const double idf =
          std::log((docs.size() + 1.0) / (df + 1.0)) + 1.0;
      score += std::count(docs[d].begin(), docs[d].end(), q) * idf;
    }
    out[ps[d].first] = score;
  }
  return out;
}

TEST(TfidfRankTest, HandComputedOrder) {
  const Corpus c = MakeCorpus(kThree);
  const auto ranking = TfidfRank({"t", {}, "neural network"}, c, 10);
  EXPECT_EQ(Ids(ranking), (std::vector<std::string>{"P1", "P3", "P2"}));
  const auto hand = HandTfidf(kThree, {"neural", "network"});
  for (const auto& s : ranking) {
    EXPECT_NEAR(s.score, hand.at(s.para_id), 1e-12) << s.para_id;
    EXPECT_EQ(s.ranker, RankerKind::kTfidf);
  }
  EXPECT_EQ(ranking[0].rank, 1);
  EXPECT_EQ(ranking[2].rank, 3);
}

TEST(TfidfRankTest, UnseenTermContributesNothing) {
  const Corpus c = MakeCorpus(kThree);
  const auto with = TfidfRank({"t", {}, "neural network zebra"}, c, 10);
  const auto without = TfidfRank({"t", {}, "neural network"}, c, 10);
  ASSERT_EQ(with.size(), without.size());
  for (std::size_t i = 0; i < with.size(); ++i) {
    EXPECT_EQ(with[i].para_id, without[i].para_id);
    EXPECT_DOUBLE_EQ(with[i].score, without[i].score);
  }
}

TEST(TfidfRankTest, LimitCutsAndTiesBreakByLengthThenId) {
  const Corpus c = MakeCorpus({{"b", "alpha beta"},
                               {"a", "alpha beta"},
                               {"c", "alpha beta gamma delta"},
                               {"d", "zeta"}});
  const auto r = TfidfRank({"t", {}, "alpha"}, c, 3);
  EXPECT_EQ(Ids(r), (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(TfidfRank({"t", {}, "alpha"}, c, 100).size(), 4u);
}

TEST(TfidfRankTest, RejectsBadInput) {
  const Corpus c = MakeCorpus(kThree);
  EXPECT_THROW(TfidfRank({"t", {}, "..."}, c, 5), InvalidArgument);
  EXPECT_THROW(TfidfRank({"t", {}, "neural"}, c, 0), InvalidArgument);
  EXPECT_THROW(TfidfRank({"t", {}, "neural"}, MakeCorpus({}), 5),
               InvalidArgument);
}

TEST(SemanticRankTest, IdenticalTextRanksFirst) {
  const Corpus c = MakeCorpus({{"x", "pasta recipes with basil"},
                               {"y", "neural network"},
                               {"z", ""}});
  embedding::FallbackEmbedder e;
  const auto r = SemanticRank({"t", {}, "neural network"}, c, 10, e);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].para_id, "y");
  EXPECT_NEAR(r[0].score, 1.0, 1e-12);
  EXPECT_EQ(r[2].para_id, "z");
  EXPECT_EQ(r[2].score, 0.0);
}

class BrokenEmbedder : public embedding::Embedder {
 public:
  std::vector<embedding::EmbeddingVector> Embed(
      std::span<const std::string>) override {
    throw ProviderUnavailable("down");
  }
  embedding::Provider provider() const override {
    return embedding::Provider::kRemote;
  }
  std::size_t dim() const override { return 0; }
};

TEST(SemanticRankTest, EmbedderFailureIsRankerUnavailable) {
  BrokenEmbedder e;
  EXPECT_THROW(SemanticRank({"t", {}, "q"}, MakeCorpus(kThree), 3, e),
               RankerUnavailable);
}

class FnScorer : public PairScorer {
 public:
  explicit FnScorer(std::function<double(const std::string&)> fn)
      : fn_(std::move(fn)) {}
  std::vector<double> Score(const std::string&,
                            std::span<const std::string> passages) override {
    max_batch = std::max(max_batch, passages.size());
    ++calls;
    std::vector<double> out;
    for (const auto& p : passages) out.push_back(fn_(p));
    return out;
  }
  std::size_t max_batch = 0;
  int calls = 0;

 private:
  std::function<double(const std::string&)> fn_;
};

TEST(RelevanceRankTest, ConstantScoresFollowTieBreak) {
  const Corpus c = MakeCorpus(
      {{"b", "one two"}, {"a", "one two"}, {"c", "one two three"}});
  FnScorer s([](const std::string&) { return 0.5; });
  EXPECT_EQ(Ids(RelevanceRank({"t", {}, "q"}, c, 10, s)),
            (std::vector<std::string>{"c", "a", "b"}));
}

TEST(RelevanceRankTest, SingleHitRanksFirst) {
  const Corpus c = MakeCorpus(kThree);
  FnScorer s([](const std::string& p) { return p.starts_with("cooking") ? 1.0 : 0.0; });
  EXPECT_EQ(RelevanceRank({"t", {}, "q"}, c, 10, s)[0].para_id, "P2");
}

TEST(RelevanceRankTest, OutOfRangeScoreIsProtocolError) {
  FnScorer s([](const std::string&) { return 1.2; });
  EXPECT_THROW(RelevanceRank({"t", {}, "q"}, MakeCorpus(kThree), 10, s),
               ProtocolError);
}

TEST(RelevanceRankTest, BatchesAtMost64) {
  std::vector<std::pair<std::string, std::string>> ps;
  for (int i = 0; i < 130; ++i) {
    ps.emplace_back("p" + std::string(i < 10 ? "00" : i < 100 ? "0" : "") + std::to_string(i), "passage number " + std::to_string(i));
  }
  FnScorer s([](const std::string&) { return 0.1; });
  EXPECT_EQ(RelevanceRank({"t", {}, "q"}, MakeCorpus(ps), 200, s).size(), 130u);
  EXPECT_LE(s.max_batch, kMaxPairBatch);
  EXPECT_EQ(s.calls, 3);
}

class DownScorer : public PairScorer {
 public:
  std::vector<double> Score(const std::string&,
                            std::span<const std::string>) override {
    throw ProviderUnavailable("connection refused");
  }
};

TEST(RelevanceRankTest, UnreachableIsRankerUnavailable) {
  DownScorer s;
  EXPECT_THROW(RelevanceRank({"t", {}, "q"}, MakeCorpus(kThree), 10, s),
               RankerUnavailable);
}

Ranking RankingOf(const std::vector<std::string>& ids) {
  Ranking r;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    r.push_back({ids[i], 1.0 / (i + 1), static_cast<int>(i) + 1, RankerKind::kTfidf});
  }
  return r;
}

TEST(SelectBudgetTest, TruncatesOverflowAndStops) {
  const std::map<std::string, int> counts = {{"P1", 600}, {"P2", 500}, {"P3", 300}};
  const auto slices = SelectBudget(
      RankingOf({"P1", "P2", "P3"}),
      [&](const std::string& id) { return counts.at(id); }, {});
  ASSERT_EQ(slices.size(), 2u);
  EXPECT_EQ(slices[0], (BudgetSlice{"P1", 600, false}));
  EXPECT_EQ(slices[1], (BudgetSlice{"P2", 424, true}));
}

TEST(SelectBudgetTest, EmptyAndOversized) {
  auto big = [](const std::string&) { return 2000; };
  EXPECT_TRUE(SelectBudget({}, big, {}).empty());
  const auto one = SelectBudget(RankingOf({"P"}), big, {});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], (BudgetSlice{"P", 1024, true}));
}

TEST(SelectBudgetTest, NoTruncationStopsBeforeOverflow) {
  const std::map<std::string, int> counts = {{"P1", 600}, {"P2", 500}, {"P3", 300}};
  const auto slices = SelectBudget(
      RankingOf({"P1", "P2", "P3"}),
      [&](const std::string& id) { return counts.at(id); }, {1024, false});
  ASSERT_EQ(slices.size(), 1u);
  EXPECT_EQ(slices[0].para_id, "P1");
}

TEST(SelectBudgetTest, CorpusOverloadAndSliceText) {
  const Corpus c = MakeCorpus({{"a", "One, two three. Four five"}});
  const auto slices = SelectBudget(RankingOf({"a"}), c, {3, true});
  ASSERT_EQ(slices.size(), 1u);
  EXPECT_EQ(slices[0].token_end, 3);
  ParagraphIndex index(c);
  EXPECT_EQ(SliceText(index.at("a"), 3), "One, two");
  EXPECT_EQ(SliceText(index.at("a"), 7), "One, two three. Four five");
}

TEST(RestrictTest, KeepsOnlyListedParagraphs) {
  const Corpus c = MakeCorpus(kThree);
  const std::vector<std::string> keep = {"P3", "P1"};
  const Corpus r = Restrict(c, keep);
  std::set<std::string> ids;
  for (const auto* p : AllParagraphs(r)) ids.insert(p->para_id);
  EXPECT_EQ(ids, (std::set<std::string>{"P1", "P3"}));
}

}  // namespace
}  // namespace surveyor::selection
