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

#include "surveyor/config.h"

#include <cstdlib>

#include <gtest/gtest.h>

#include "surveyor/errors.h"

namespace surveyor {
namespace {

TEST(ConfigTest, DefaultsFromEmptyFile) {
  const auto c = ParseConfig("");
  EXPECT_EQ(c.ranker, selection::RankerKind::kTfidf);
  EXPECT_EQ(c.mode, SelectionMode::kRetrieval);
  EXPECT_EQ(c.top_l, 10u);
  EXPECT_EQ(c.pool_l, 50u);
  EXPECT_EQ(c.budget.max_tokens, 1024);
  EXPECT_EQ(c.clusters, 5u);
  EXPECT_EQ(c.engine, summarize::Engine::kTextRank);
  EXPECT_EQ(c.summary.word_min, 50);
  EXPECT_EQ(c.summary.word_max, 150);
  EXPECT_DOUBLE_EQ(c.summary.textrank.damping, 0.85);
  EXPECT_DOUBLE_EQ(c.summary.textrank.tolerance, 1e-6);
  EXPECT_EQ(c.summary.textrank.max_iter, 100);
  EXPECT_DOUBLE_EQ(c.summary.mmr_lambda, 0.5);
  EXPECT_EQ(c.embedder, EmbedderKind::kFallback);
}

TEST(ConfigTest, ExampleFileMatchesDefaults) {
  const auto c = LoadConfig(SURVEYOR_EXAMPLE_CONFIG);
  EXPECT_EQ(CanonicalConfig(c), CanonicalConfig({}));
  EXPECT_EQ(ConfigHash(c), ConfigHash({}));
}

TEST(ConfigTest, ReadsEverySection) {
  const auto c = ParseConfig(
      "; comment\n"
      "[selection]\nranker = semantic\nmode = clustering\ntop_l = 7\npool_l = 40\n"
      "[budget]\nmax_tokens = 512\nallow_truncation = false\n"
      "[clustering]\nk = 4\n"
      "[summary]\nengine = mmr\nword_min = 40\nword_max = 120\nmmr_lambda = 0.7\n"
      "[models]\nembedder = remote\nserver = http://10.0.0.2:9000\ntimeout_ms = 500\n"
      "[ingest]\nmin_paragraph_tokens = 12\n");
  EXPECT_EQ(c.ranker, selection::RankerKind::kSemantic);
  EXPECT_EQ(c.mode, SelectionMode::kClustering);
  EXPECT_EQ(c.top_l, 7u);
  EXPECT_EQ(c.pool_l, 40u);
  EXPECT_EQ(c.budget.max_tokens, 512);
  EXPECT_FALSE(c.budget.allow_truncation);
  EXPECT_EQ(c.clusters, 4u);
  EXPECT_EQ(c.engine, summarize::Engine::kMmr);
  EXPECT_EQ(c.summary.word_max, 120);
  EXPECT_DOUBLE_EQ(c.summary.mmr_lambda, 0.7);
  EXPECT_EQ(c.embedder, EmbedderKind::kRemote);
  EXPECT_EQ(c.server.base_url, "http://10.0.0.2:9000");
  EXPECT_EQ(c.server.timeout.count(), 500);
  EXPECT_EQ(c.min_paragraph_tokens, 12);
}

TEST(ConfigTest, RejectsUnknownAndInvalid) {
  EXPECT_THROW(ParseConfig("[selection]\nrankr = tfidf\n"), InvalidArgument);
  EXPECT_THROW(ParseConfig("[misc]\na = 1\n"), InvalidArgument);
  EXPECT_THROW(ParseConfig("[selection]\ntop_l = ten\n"), InvalidArgument);
  EXPECT_THROW(ParseConfig("[selection]\ntop_l = -1\n"), InvalidArgument);
  EXPECT_THROW(ParseConfig("[summary]\nengine = lead3\n"), InvalidArgument);
  EXPECT_THROW(ParseConfig("[summary]\nword_min = 200\n"), InvalidArgument);
  EXPECT_THROW(ParseConfig("[summary]\nmmr_lambda = 1.5\n"), InvalidArgument);
  EXPECT_THROW(ParseConfig("[budget]\nallow_truncation = maybe\n"), InvalidArgument);
  EXPECT_THROW(ParseConfig("[selection\n"), InvalidArgument);
}

TEST(ConfigTest, HashTracksEffectiveValues) {
  const auto a = ParseConfig("");
  const auto b = ParseConfig("[clustering]\nk = 5\n[selection]\nranker = tfidf\n");
  const auto c = ParseConfig("[clustering]\nk = 6\n");
  EXPECT_EQ(ConfigHash(a), ConfigHash(b));
  EXPECT_NE(ConfigHash(a), ConfigHash(c));
  EXPECT_EQ(ConfigHash(ParseConfig(CanonicalConfig(c))), ConfigHash(c));
  EXPECT_EQ(ConfigHash(a).size(), 16u);
}

TEST(ConfigTest, EnvironmentOverridesServer) {
  auto c = ParseConfig("[models]\nserver = http://a.test:1\n");
  setenv(model::kServerUrlEnv, "http://b.test:2", 1);
  ApplyEnvironment(c);
  unsetenv(model::kServerUrlEnv);
  EXPECT_EQ(c.server.base_url, "http://b.test:2");
}

}  // namespace
}  // namespace surveyor
