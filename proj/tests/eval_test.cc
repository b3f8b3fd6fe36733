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

#include "surveyor/eval.h"

#include <functional>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "surveyor/errors.h"

namespace surveyor::eval {
namespace {

std::vector<std::string> Ids(int n, const std::string& prefix = "p") {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

TopicJudgments Judge(const std::vector<std::string>& ids,
                     const std::function<bool(int)>& relevant) {
  TopicJudgments j;
  for (std::size_t i = 0; i < ids.size(); ++i) j[ids[i]] = relevant(static_cast<int>(i));
  return j;
}

TEST(PrecisionAtKTest, Examples) {
  const auto ids = Ids(10);
  EXPECT_DOUBLE_EQ(PrecisionAtK(ids, Judge(ids, [](int) { return true; }), 10), 1.0);
  EXPECT_DOUBLE_EQ(
      PrecisionAtK(ids, Judge(ids, [](int i) { return i % 2 == 0; }), 10), 0.5);
}

TEST(PrecisionAtKTest, ShortListsDivideByK) {
  const auto ids = Ids(4);
  EXPECT_DOUBLE_EQ(PrecisionAtK(ids, Judge(ids, [](int) { return true; }), 10), 0.4);
}

TEST(PrecisionAtKTest, UnjudgedCountsAsNotRelevant) {
  const auto ids = Ids(4);
  TopicJudgments j = {{"p0", true}};
  EXPECT_DOUBLE_EQ(PrecisionAtK(ids, j, 2), 0.5);
  EXPECT_THROW(PrecisionAtK(ids, j, 0), InvalidArgument);
}

TEST(AvgPAtKTest, MeanOverTopics) {
  const std::vector<double> v = {1.0, 0.5};
  EXPECT_DOUBLE_EQ(AvgPAtK(v), 0.75);
  EXPECT_THROW(AvgPAtK({}), InvalidArgument);
}

TEST(RecallAtKTest, NonDecreasing) {
  const auto ids = Ids(30);
  const auto j = Judge(ids, [](int i) { return i % 3 == 1 || i == 29; });
  double last = 0.0;
  for (int k = 1; k <= 35; ++k) {
    const double r = RecallAtK(ids, j, k);
    EXPECT_GE(r, last);
    last = r;
  }
  EXPECT_DOUBLE_EQ(last, 1.0);
}

QualityJudgment Q(std::string system, Axis axis, int score, std::string judge) {
  return {"topic", std::move(system), axis, score, std::move(judge)};
}

TEST(AggregateQualityTest, MeansAndFormatting) {
  EXPECT_EQ(FormatMean((4 + 4.3) / 2), "4.15");
  std::vector<QualityJudgment> js;
  // 17 fours and 3 fives average to 4.15.
  for (int i = 0; i < 20; ++i) {
    js.push_back(Q("ours", Axis::kReadability, i < 17 ? 4 : 5, "j" + std::to_string(i)));
  }
  js.push_back(Q("ours", Axis::kRedundancy, 3, "j0"));
  const auto agg = AggregateQuality(js);
  EXPECT_EQ(FormatMean(agg.at({"ours", Axis::kReadability})), "4.15");
  EXPECT_EQ(FormatMean(agg.at({"ours", Axis::kRedundancy})), "3.00");
  EXPECT_FALSE(agg.contains({"ours", Axis::kHallucination}));
  EXPECT_TRUE(LowerIsBetter(Axis::kRedundancy));
  EXPECT_FALSE(LowerIsBetter(Axis::kRelevancy));
}

TEST(ParseJudgmentsTest, RelevanceAndQuality) {
  const auto r = ParseRelevanceJudgments(
      "{\"topic\":\"BERT\",\"para_id\":\"d1-p0000\",\"relevant\":true}\n"
      "\n"
      "{\"topic\":\"BERT\",\"para_id\":\"d1-p0001\",\"relevant\":false}\n");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].relevant);
  const auto q = ParseQualityJudgments(
      "{\"topic\":\"BERT\",\"system\":\"s\",\"axis\":\"hallucination\","
      "\"score\":2,\"judge_id\":\"a\"}\n");
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].axis, Axis::kHallucination);
  EXPECT_THROW(ParseQualityJudgments(
                   "{\"topic\":\"B\",\"system\":\"s\",\"axis\":\"readability\","
                   "\"score\":6,\"judge_id\":\"a\"}\n"),
               ParseError);
  try {
    ParseRelevanceJudgments("{\"topic\":\"B\",\"para_id\":\"x\",\"relevant\":true}\n[\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ParseJudgmentsTest, DuplicatePairRejected) {
  const std::vector<RelevanceJudgment> r = {{"T", "a", true}, {"T", "a", false}};
  EXPECT_THROW(GroupByTopic(r), ParseError);
}

TEST(EvaluateRunTest, VerbatimScoresOne) {
  const std::vector<SystemRecord> sys = {{"A", "The cat sat.", {}, {}},
                                         {"B", "Dogs bark loudly!", {}, {}}};
  const std::vector<ReferenceRecord> ref = {{"A", "The cat sat."},
                                            {"B", "Dogs bark loudly!"}};
  const auto r = EvaluateRun(sys, ref, {}, {}, {});
  EXPECT_DOUBLE_EQ(r.mean_rouge1, 1.0);
  EXPECT_DOUBLE_EQ(r.mean_rouge2, 1.0);
  EXPECT_DOUBLE_EQ(r.mean_rougeL, 1.0);
  EXPECT_TRUE(r.avg_p_at_k.empty());
}

TEST(EvaluateRunTest, AlignmentErrors) {
  const std::vector<ReferenceRecord> ref = {{"A", "x"}};
  EXPECT_THROW(EvaluateRun({}, ref, {}, {}, {}), AlignmentError);
  EXPECT_THROW(EvaluateRun({}, {}, {}, {}, {}), AlignmentError);
  const std::vector<SystemRecord> sys = {{"B", "x", {}, {}}};
  try {
    EvaluateRun(sys, ref, {}, {}, {});
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("'A'"), std::string::npos);
    EXPECT_NE(what.find("'B'"), std::string::npos);
  }
}

TEST(EvaluateRunTest, TwoTopicHandRouge1) {
  // A: cand {the:2, cat, sat, on, mat}, ref {the:2, cat, lay, on, mat};
  //    clipped match 5 of 6 on both sides, F = 5/6.
  // B: cand {a, b, c}, ref {a, b, c, d, e}; match 3, P = 1, R = 3/5,
  //    F = 0.75.
  const std::vector<SystemRecord> sys = {
      {"A", "The cat sat on the mat.", {}, {}}, {"B", "A b c", {}, {}}};
  const std::vector<ReferenceRecord> ref = {{"A", "the cat lay on the mat"},
                                            {"B", "a b, c d e."}};
  const auto r = EvaluateRun(sys, ref, {}, {}, {});
  ASSERT_EQ(r.topics.size(), 2u);
  EXPECT_NEAR(r.topics[0].rouge1.f1, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(r.topics[1].rouge1.f1, 0.75, 1e-12);
  EXPECT_NEAR(r.mean_rouge1, (5.0 / 6.0 + 0.75) / 2, 1e-12);

  EvalConfig recall;
  recall.variant = RougeVariant::kRecall;
  EXPECT_NEAR(EvaluateRun(sys, ref, {}, {}, recall).mean_rouge1,
              (5.0 / 6.0 + 0.6) / 2, 1e-12);
}

TEST(EvaluateRunTest, AvgPAndOverlapAndReports) {
  const auto ranked = Ids(50);
  SystemRecord a{"A", "x", ranked, {}};
  SystemRecord b{"B", "x", ranked, {}};
  a.sections = {{"History", Ids(10, "h")}, {"Key Ideas", Ids(10, "h")}};
  std::vector<RelevanceJudgment> rel;
  for (int i = 0; i < 50; ++i) {
    rel.push_back({"A", ranked[i], true});
    rel.push_back({"B", ranked[i], i % 2 == 0});
  }
  const std::vector<SystemRecord> sys = {a, b};
  const std::vector<ReferenceRecord> ref = {{"A", "x"}, {"B", "x"}};
  const auto r = EvaluateRun(sys, ref, rel, {}, {});
  EXPECT_DOUBLE_EQ(r.avg_p_at_k.at(10), 0.75);
  EXPECT_DOUBLE_EQ(r.avg_p_at_k.at(20), 0.75);
  EXPECT_DOUBLE_EQ(r.avg_p_at_k.at(50), 0.75);
  ASSERT_TRUE(r.overlap_mean.has_value());
  EXPECT_DOUBLE_EQ(*r.overlap_mean, 10.0);

  const std::string md = ReportMarkdown(r);
  EXPECT_NE(md.find("| Run | AvgP@10 | AvgP@20 | AvgP@50 |"), std::string::npos);
  EXPECT_NE(md.find("| system | 0.7500 | 0.7500 | 0.7500 |"), std::string::npos);
  const auto j = nlohmann::json::parse(ReportJson(r));
  EXPECT_DOUBLE_EQ(j["avg_p_at_k"]["10"].get<double>(), 0.75);
  EXPECT_TRUE(j.contains("avg_p_definition"));
}

}  // namespace
}  // namespace surveyor::eval
