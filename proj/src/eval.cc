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

#include <algorithm>
#include <functional>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "surveyor/errors.h"
#include "surveyor/text.h"

namespace surveyor::eval {

using nlohmann::json;

std::string_view AxisName(Axis axis) {
  switch (axis) {
    case Axis::kReadability:
      return "readability";
    case Axis::kRelevancy:
      return "relevancy";
    case Axis::kRedundancy:
      return "redundancy";
    case Axis::kHallucination:
      return "hallucination";
  }
  return "";
}

Axis ParseAxis(std::string_view name) {
  for (auto a : {Axis::kReadability, Axis::kRelevancy, Axis::kRedundancy,
                 Axis::kHallucination}) {
    if (AxisName(a) == name) return a;
  }
  throw InvalidArgument("unknown quality axis '" + std::string(name) + "'");
}

bool LowerIsBetter(Axis axis) {
  return axis == Axis::kRedundancy || axis == Axis::kHallucination;
}

namespace {

std::size_t RelevantInTop(std::span<const std::string> ranked,
                          const TopicJudgments& judgments, int k) {
  const std::size_t n = std::min(ranked.size(), static_cast<std::size_t>(k));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = judgments.find(ranked[i]);
    if (it == judgments.end()) {
      spdlog::warn("no relevance judgment for '{}'; counted as not relevant",
                   ranked[i]);
      continue;
    }
    if (it->second) ++hits;
  }
  return hits;
}

void ForEachJsonLine(std::string_view data,
                     const std::function<void(const json&, int)>& fn) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    std::string_view line = data.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!j.is_object()) throw ParseError("record is not an object", line_no);
    try {
      fn(j, line_no);
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
}

double Pick(const RougeScore& s, RougeVariant v) {
  return v == RougeVariant::kRecall ? s.recall : s.f1;
}

std::vector<std::string> RougeTokens(const std::string& s) {
  std::vector<std::string> out;
  for (auto& t : text::Tokenize(s)) {
    if (t.kind != text::TokenKind::kPunct) out.push_back(std::move(t.surface));
  }
  return out;
}

}  // namespace

double PrecisionAtK(std::span<const std::string> ranked,
                    const TopicJudgments& judgments, int k) {
  if (k < 1) throw InvalidArgument("precision@k: k must be >= 1");
  return static_cast<double>(RelevantInTop(ranked, judgments, k)) / k;
}

double RecallAtK(std::span<const std::string> ranked,
                 const TopicJudgments& judgments, int k) {
  if (k < 1) throw InvalidArgument("recall@k: k must be >= 1");
  const auto total = std::count_if(judgments.begin(), judgments.end(),
                                   [](const auto& j) { return j.second; });
  if (total == 0) return 0.0;
  return static_cast<double>(RelevantInTop(ranked, judgments, k)) /
         static_cast<double>(total);
}

double AvgPAtK(std::span<const double> per_topic) {
  if (per_topic.empty()) {
    throw InvalidArgument("AvgP@k needs at least one topic");
  }
  double sum = 0.0;
  for (double v : per_topic) sum += v;
  return sum / static_cast<double>(per_topic.size());
}

std::map<std::pair<std::string, Axis>, double> AggregateQuality(
    std::span<const QualityJudgment> judgments) {
  std::map<std::pair<std::string, Axis>, std::pair<double, int>> acc;
  for (const auto& j : judgments) {
    auto& cell = acc[{j.system, j.axis}];
    cell.first += j.score;
    cell.second += 1;
  }
  std::map<std::pair<std::string, Axis>, double> out;
  for (const auto& [key, cell] : acc) out[key] = cell.first / cell.second;
  return out;
}

std::string FormatMean(double value) { return fmt::format("{:.2f}", value); }

std::vector<RelevanceJudgment> ParseRelevanceJudgments(std::string_view data) {
  std::vector<RelevanceJudgment> out;
  ForEachJsonLine(data, [&](const json& j, int) {
    out.push_back({j.at("topic").get<std::string>(),
                   j.at("para_id").get<std::string>(),
                   j.at("relevant").get<bool>()});
  });
  return out;
}

std::vector<QualityJudgment> ParseQualityJudgments(std::string_view data) {
  std::vector<QualityJudgment> out;
  ForEachJsonLine(data, [&](const json& j, int line) {
    QualityJudgment q;
    q.topic = j.at("topic").get<std::string>();
    q.system = j.at("system").get<std::string>();
    q.axis = ParseAxis(j.at("axis").get<std::string>());
    q.score = j.at("score").get<int>();
    q.judge_id = j.at("judge_id").get<std::string>();
    if (q.score < 1 || q.score > 5) {
      throw ParseError(fmt::format("score {} outside 1..5", q.score), line);
    }
    out.push_back(std::move(q));
  });
  return out;
}

std::map<std::string, TopicJudgments> GroupByTopic(
    std::span<const RelevanceJudgment> judgments) {
  std::map<std::string, TopicJudgments> out;
  for (const auto& j : judgments) {
    if (!out[j.topic].emplace(j.para_id, j.relevant).second) {
      throw ParseError("duplicate judgment for topic '" + j.topic +
                       "', para_id '" + j.para_id + "'");
    }
  }
  return out;
}

std::vector<SystemRecord> ParseSystemRecords(std::string_view data) {
  std::vector<SystemRecord> out;
  ForEachJsonLine(data, [&](const json& j, int) {
    SystemRecord r;
    r.topic = j.at("topic").get<std::string>();
    r.summary = j.at("summary").get<std::string>();
    if (j.contains("ranked")) {
      r.ranked = j.at("ranked").get<std::vector<std::string>>();
    }
    if (j.contains("sections")) {
      r.sections = j.at("sections")
                       .get<std::map<std::string, std::vector<std::string>>>();
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<ReferenceRecord> ParseReferenceRecords(std::string_view data) {
  std::vector<ReferenceRecord> out;
  ForEachJsonLine(data, [&](const json& j, int) {
    out.push_back({j.at("topic").get<std::string>(),
                   j.at("summary").get<std::string>()});
  });
  return out;
}

EvaluationReport EvaluateRun(std::span<const SystemRecord> system,
                             std::span<const ReferenceRecord> references,
                             std::span<const RelevanceJudgment> relevance,
                             std::span<const QualityJudgment> quality,
                             const EvalConfig& config) {
  std::map<std::string, const SystemRecord*> sys;
  std::map<std::string, const ReferenceRecord*> ref;
  std::vector<std::string> problems;
  for (const auto& s : system) {
    if (!sys.emplace(s.topic, &s).second) {
      problems.push_back("duplicate system topic '" + s.topic + "'");
    }
  }
  for (const auto& r : references) {
    if (!ref.emplace(r.topic, &r).second) {
      problems.push_back("duplicate reference topic '" + r.topic + "'");
    }
  }
  for (const auto& [topic, r] : ref) {
    if (!sys.contains(topic)) problems.push_back("missing from system: '" + topic + "'");
  }
  for (const auto& [topic, s] : sys) {
    if (!ref.contains(topic)) problems.push_back("missing from reference: '" + topic + "'");
  }
  if (sys.empty() && problems.empty()) problems.push_back("no topics to evaluate");
  if (!problems.empty()) {
    std::string msg = "topic alignment failed:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw AlignmentError(msg);
  }

  const auto judged = GroupByTopic(relevance);
  EvaluationReport report;
  report.config = config;
  std::map<int, std::vector<double>> p_by_k;
  std::vector<double> overlap_values;
  for (const auto& [topic, s] : sys) {
    const auto cand = RougeTokens(s->summary);
    const auto gold = RougeTokens(ref.at(topic)->summary);
    TopicResult t;
    t.topic = topic;
    t.rouge1 = RougeN(cand, gold, 1);
    t.rouge2 = RougeN(cand, gold, 2);
    t.rougeL = RougeL(cand, gold);
    if (auto it = judged.find(topic); it != judged.end()) {
      for (int k : config.ks) {
        t.precision_at_k[k] = PrecisionAtK(s->ranked, it->second, k);
        t.recall_at_k[k] = RecallAtK(s->ranked, it->second, k);
        p_by_k[k].push_back(t.precision_at_k[k]);
      }
    }
    if (s->sections.size() >= 2) {
      t.overlap = clustering::Overlap(
          s->sections, static_cast<std::size_t>(config.overlap_k));
      for (const auto& [pair, count] : t.overlap->pairs) {
        overlap_values.push_back(static_cast<double>(count));
      }
    }
    report.mean_rouge1 += Pick(t.rouge1, config.variant);
    report.mean_rouge2 += Pick(t.rouge2, config.variant);
    report.mean_rougeL += Pick(t.rougeL, config.variant);
    report.topics.push_back(std::move(t));
  }
  const double n = static_cast<double>(report.topics.size());
  report.mean_rouge1 /= n;
  report.mean_rouge2 /= n;
  report.mean_rougeL /= n;
  for (const auto& [k, values] : p_by_k) report.avg_p_at_k[k] = AvgPAtK(values);
  if (!overlap_values.empty()) {
    report.overlap_min =
        *std::min_element(overlap_values.begin(), overlap_values.end());
    report.overlap_max =
        *std::max_element(overlap_values.begin(), overlap_values.end());
    double sum = 0.0;
    for (double v : overlap_values) sum += v;
    report.overlap_mean = sum / static_cast<double>(overlap_values.size());
  }
  report.quality = AggregateQuality(quality);
  return report;
}

namespace {

constexpr const char* kAvgPDefinition =
    "AvgP@k = mean over topics of Precision@k (not truncated average "
    "precision)";

std::string VariantName(RougeVariant v) {
  return v == RougeVariant::kRecall ? "recall" : "f1";
}

json ScoreJson(const RougeScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

}  // namespace

std::string ReportJson(const EvaluationReport& report) {
  json j;
  j["avg_p_definition"] = kAvgPDefinition;
  j["rouge_variant"] = VariantName(report.config.variant);
  j["ks"] = report.config.ks;
  json topics = json::array();
  for (const auto& t : report.topics) {
    json tj = {{"topic", t.topic},
               {"rouge1", ScoreJson(t.rouge1)},
               {"rouge2", ScoreJson(t.rouge2)},
               {"rougeL", ScoreJson(t.rougeL)}};
    json p = json::object();
    json r = json::object();
    for (const auto& [k, v] : t.precision_at_k) p[std::to_string(k)] = v;
    for (const auto& [k, v] : t.recall_at_k) r[std::to_string(k)] = v;
    tj["precision_at_k"] = p;
    tj["recall_at_k"] = r;
    if (t.overlap) {
      json pairs = json::array();
      for (const auto& [key, count] : t.overlap->pairs) {
        pairs.push_back({{"a", key.first}, {"b", key.second}, {"count", count}});
      }
      tj["overlap"] = {{"k", t.overlap->k}, {"pairs", pairs}};
    }
    topics.push_back(std::move(tj));
  }
  j["topics"] = std::move(topics);
  j["mean"] = {{"rouge1", report.mean_rouge1},
               {"rouge2", report.mean_rouge2},
               {"rougeL", report.mean_rougeL}};
  json avgp = json::object();
  for (int k : report.config.ks) {
    auto it = report.avg_p_at_k.find(k);
    avgp[std::to_string(k)] =
        it == report.avg_p_at_k.end() ? json() : json(it->second);
  }
  j["avg_p_at_k"] = avgp;
  if (report.overlap_mean) {
    j["overlap"] = {{"k", report.config.overlap_k},
                    {"min", *report.overlap_min},
                    {"max", *report.overlap_max},
                    {"mean", *report.overlap_mean}};
  } else {
    j["overlap"] = nullptr;
  }
  json q = json::array();
  for (const auto& [key, mean] : report.quality) {
    q.push_back({{"system", key.first},
                 {"axis", AxisName(key.second)},
                 {"mean", mean},
                 {"display", FormatMean(mean)},
                 {"lower_is_better", LowerIsBetter(key.second)}});
  }
  j["quality"] = std::move(q);
  return j.dump(2) + "\n";
}

std::string ReportMarkdown(const EvaluationReport& report) {
  std::string out;
  out += fmt::format("<!-- {} -->\n\n", kAvgPDefinition);
  const std::string v = VariantName(report.config.variant);
  const auto pct = [](double x) { return fmt::format("{:.2f}", 100.0 * x); };
  out += fmt::format("| Topic | R-1 ({0}) | R-2 ({0}) | R-L ({0}) |\n", v);
  out += "|---|---:|---:|---:|\n";
  for (const auto& t : report.topics) {
    out += fmt::format("| {} | {} | {} | {} |\n", t.topic,
                       pct(Pick(t.rouge1, report.config.variant)),
                       pct(Pick(t.rouge2, report.config.variant)),
                       pct(Pick(t.rougeL, report.config.variant)));
  }
  out += fmt::format("| **Mean** | {} | {} | {} |\n", pct(report.mean_rouge1),
                     pct(report.mean_rouge2), pct(report.mean_rougeL));

  const auto cell = [](const std::map<int, double>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? std::string("-") : fmt::format("{:.4f}", it->second);
  };
  if (!report.avg_p_at_k.empty()) {
    out += "\n| Topic |";
    for (int k : report.config.ks) out += fmt::format(" P@{} |", k);
    out += "\n|---|";
    for (std::size_t i = 0; i < report.config.ks.size(); ++i) out += "---:|";
    out += '\n';
    for (const auto& t : report.topics) {
      out += "| " + t.topic + " |";
      for (int k : report.config.ks) out += " " + cell(t.precision_at_k, k) + " |";
      out += '\n';
    }
  }
  out += "\n| Run |";
  for (int k : report.config.ks) out += fmt::format(" AvgP@{} |", k);
  out += "\n|---|";
  for (std::size_t i = 0; i < report.config.ks.size(); ++i) out += "---:|";
  out += "\n| system |";
  for (int k : report.config.ks) out += " " + cell(report.avg_p_at_k, k) + " |";
  out += '\n';
  if (report.overlap_mean) {
    out += fmt::format(
        "\nSection overlap in top-{}: min {:.0f}, max {:.0f}, mean {:.2f}\n",
        report.config.overlap_k, *report.overlap_min, *report.overlap_max,
        *report.overlap_mean);
  }
  if (!report.quality.empty()) {
    std::set<std::string> systems;
    for (const auto& [key, mean] : report.quality) systems.insert(key.first);
    out += "\n| Evaluation |";
    for (const auto& s : systems) out += " " + s + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < systems.size(); ++i) out += "---:|";
    out += '\n';
    for (auto axis : {Axis::kReadability, Axis::kRelevancy, Axis::kRedundancy,
                      Axis::kHallucination}) {
      std::string name(AxisName(axis));
      name[0] = static_cast<char>(std::toupper(name[0]));
      out += "| " + name + (LowerIsBetter(axis) ? "*" : "") + " |";
      for (const auto& s : systems) {
        auto it = report.quality.find({s, axis});
        out += it == report.quality.end() ? std::string(" - |")
                                          : " " + FormatMean(it->second) + " |";
      }
      out += '\n';
    }
    out += "\n\\* lower is better\n";
  }
  return out;
}

}  // namespace surveyor::eval
