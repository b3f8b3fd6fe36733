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

#ifndef SURVEYOR_EVAL_H_
#define SURVEYOR_EVAL_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surveyor/clustering.h"
#include "surveyor/rouge.h"

namespace surveyor::eval {

// para_id -> relevant, for one topic.
using TopicJudgments = std::map<std::string, bool, std::less<>>;

struct RelevanceJudgment {
  std::string topic;
  std::string para_id;
  bool relevant = false;
};

enum class Axis { kReadability, kRelevancy, kRedundancy, kHallucination };

std::string_view AxisName(Axis axis);
Axis ParseAxis(std::string_view name);
// Redundancy and hallucination are better when lower.
bool LowerIsBetter(Axis axis);

struct QualityJudgment {
  std::string topic;
  std::string system;
  Axis axis = Axis::kReadability;
  int score = 1;  // 1..5
  std::string judge_id;
};

// |relevant among the first min(k, n)| / k. Ids without a judgment count
// as not relevant (a warning is logged). Throws InvalidArgument if k < 1.
double PrecisionAtK(std::span<const std::string> ranked,
                    const TopicJudgments& judgments, int k);

// |relevant among the first min(k, n)| / |relevant judged|; 0 when the
// topic has no relevant items.
double RecallAtK(std::span<const std::string> ranked,
                 const TopicJudgments& judgments, int k);

// Mean of per-topic P@k. Throws InvalidArgument on an empty set.
double AvgPAtK(std::span<const double> per_topic);

// Mean score per (system, axis) across topics and judges. Cells without
// judgments are absent.
std::map<std::pair<std::string, Axis>, double> AggregateQuality(
    std::span<const QualityJudgment> judgments);

// Two-decimal rendering used in reports ("4.15", "3.00").
std::string FormatMean(double value);

// JSON-lines loaders. Throw ParseError naming the line.
std::vector<RelevanceJudgment> ParseRelevanceJudgments(std::string_view data);
std::vector<QualityJudgment> ParseQualityJudgments(std::string_view data);

// topic -> para_id -> relevant. Throws ParseError on a repeated pair.
std::map<std::string, TopicJudgments> GroupByTopic(
    std::span<const RelevanceJudgment> judgments);

// System output for one topic: {"topic", "summary", "ranked": [...],
// "sections": {"History": [...], ...}}. Only topic and summary are required.
struct SystemRecord {
  std::string topic;
  std::string summary;
  std::vector<std::string> ranked;
  std::map<std::string, std::vector<std::string>> sections;
};

// Reference for one topic: {"topic", "summary"}.
struct ReferenceRecord {
  std::string topic;
  std::string summary;
};

std::vector<SystemRecord> ParseSystemRecords(std::string_view data);
std::vector<ReferenceRecord> ParseReferenceRecords(std::string_view data);

enum class RougeVariant { kF1, kRecall };

struct EvalConfig {
  std::vector<int> ks = {10, 20, 50};
  RougeVariant variant = RougeVariant::kF1;
  int overlap_k = 10;
};

struct TopicResult {
  std::string topic;
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
  std::map<int, double> precision_at_k;  // present when judged
  std::map<int, double> recall_at_k;
  std::optional<clustering::OverlapReport> overlap;
};

struct EvaluationReport {
  EvalConfig config;
  std::vector<TopicResult> topics;  // sorted by topic
  double mean_rouge1 = 0.0;         // of the configured variant
  double mean_rouge2 = 0.0;
  double mean_rougeL = 0.0;
  std::map<int, double> avg_p_at_k;  // absent when no topic was judged
  std::optional<double> overlap_min;
  std::optional<double> overlap_max;
  std::optional<double> overlap_mean;
  std::map<std::pair<std::string, Axis>, double> quality;
};

// ROUGE is computed over word and number tokens (punctuation dropped).
// Throws AlignmentError listing topics present on only one side.
EvaluationReport EvaluateRun(
    std::span<const SystemRecord> system,
    std::span<const ReferenceRecord> references,
    std::span<const RelevanceJudgment> relevance,
    std::span<const QualityJudgment> quality, const EvalConfig& config);

std::string ReportJson(const EvaluationReport& report);
std::string ReportMarkdown(const EvaluationReport& report);

}  // namespace surveyor::eval

#endif  // SURVEYOR_EVAL_H_
