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

// surveyor: command-line front end for the survey pipeline.
//
// Exit status: 0 on success, 1 on a fatal error, 2 on a usage error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "surveyor/assembler.h"
#include "surveyor/clustering.h"
#include "surveyor/config.h"
#include "surveyor/corpus.h"
#include "surveyor/errors.h"
#include "surveyor/eval.h"
#include "surveyor/fetch.h"
#include "surveyor/ingest.h"
#include "surveyor/model_client.h"
#include "surveyor/selection.h"
#include "surveyor/text.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace surveyor {
namespace {

struct Globals {
  std::string workdir = ".";
  std::string log_level = "warn";
  std::string config;

  fs::path Resolve(const std::string& p) const {
    const fs::path path(p);
    return path.is_absolute() ? path : fs::path(workdir) / path;
  }

  PipelineConfig LoadPipelineConfig() const {
    PipelineConfig c = config.empty() ? PipelineConfig{} : LoadConfig(Resolve(config));
    ApplyEnvironment(c);
    return c;
  }
};

// Model clients wired up only for the parts of the config that need them.
struct Models {
  std::unique_ptr<model::RemoteEmbedder> embedder;
  std::unique_ptr<model::RemotePairScorer> scorer;
  std::unique_ptr<model::RemoteGenerator> generator;

  explicit Models(const PipelineConfig& c) {
    if (c.embedder == EmbedderKind::kRemote) {
      embedder = std::make_unique<model::RemoteEmbedder>(c.server);
    }
    if (c.ranker == selection::RankerKind::kRelevance) {
      scorer = std::make_unique<model::RemotePairScorer>(c.server);
    }
    if (c.engine == summarize::Engine::kAbstractive) {
      generator = std::make_unique<model::RemoteGenerator>(c.server);
    }
  }

  assembler::Services services() const {
    return {embedder.get(), scorer.get(), generator.get()};
  }
};

void Emit(const Globals& g, const std::string& out, const std::string& data) {
  if (out.empty() || out == "-") {
    std::cout << data;
  } else {
    WriteFileAtomic(g.Resolve(out), data);
  }
}

Corpus LoadCorpus(const Globals& g, const std::string& path,
                  const std::string& topic) {
  Corpus corpus = ReadCorpus(g.Resolve(path));
  if (!topic.empty() && corpus.topic != topic) {
    throw InvalidArgument(fmt::format("corpus topic '{}' does not match '{}'",
                                      corpus.topic, topic));
  }
  return corpus;
}

selection::Ranking RankFor(const selection::Query& query, const Corpus& corpus,
                           std::size_t limit, const PipelineConfig& config,
                           const assembler::Services& services) {
  embedding::FallbackEmbedder fallback;
  embedding::Embedder& embedder =
      services.embedder != nullptr ? *services.embedder : fallback;
  switch (config.ranker) {
    case selection::RankerKind::kSemantic:
      return selection::SemanticRank(query, corpus, limit, embedder);
    case selection::RankerKind::kRelevance:
      return selection::RelevanceRank(query, corpus, limit, *services.scorer,
                                      config.server.max_batch);
    case selection::RankerKind::kTfidf:
      break;
  }
  return selection::TfidfRank(query, corpus, limit,
                              {.length_normalize = config.length_normalize});
}

std::vector<int> ParseKs(const std::string& list) {
  std::vector<int> ks;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string item = list.substr(start, comma - start);
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || k < 1) {
      throw CLI::ValidationError("--k", "expected a comma list of positive integers");
    }
    ks.push_back(k);
    start = comma + 1;
  }
  return ks;
}

}  // namespace
}  // namespace surveyor

int main(int argc, char** argv) {
  using namespace surveyor;
  CLI::App app{"Topic-to-survey pipeline"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--workdir", g.workdir, "Base directory for relative paths")
      ->check(CLI::ExistingDirectory);
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Fetch pages and build a corpus");
  std::string topic, out, urls, fixtures, clone_ref, created_at;
  int parallelism = 4;
  ingest->add_option("--topic", topic)->required();
  auto* urls_opt = ingest->add_option("--urls", urls, "URL list file");
  auto* fixtures_opt =
      ingest->add_option("--fixtures", fixtures, "Offline page directory");
  urls_opt->excludes(fixtures_opt);
  ingest->add_option("--out", out)->required();
  ingest->add_option("--clone-reference", clone_ref,
                     "Text file; paragraphs cloning it are dropped");
  ingest->add_option("--created-at", created_at, "Corpus timestamp (UTC, ...Z)");
  ingest->add_option("--parallelism", parallelism)->check(CLI::PositiveNumber);
  ingest->add_option("--config", g.config);

  // select
  auto* select = app.add_subcommand("select", "Rank and budget paragraphs");
  std::string corpus_path, section;
  std::size_t limit = 0;
  select->add_option("--corpus", corpus_path)->required();
  select->add_option("--topic", topic);
  select->add_option("--section", section);
  select->add_option("--limit", limit, "Ranked list length (default top_l)");
  select->add_option("--config", g.config);
  select->add_option("--out", out);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Cluster the candidate pool");
  cluster->add_option("--corpus", corpus_path)->required();
  cluster->add_option("--topic", topic);
  cluster->add_option("--config", g.config);
  cluster->add_option("--out", out);

  // survey
  auto* survey = app.add_subcommand("survey", "Build and render a survey");
  std::string format = "markdown";
  survey->add_option("--topic", topic)->required();
  survey->add_option("--corpus", corpus_path)->required();
  survey->add_option("--config", g.config);
  survey->add_option("--out", out);
  survey->add_option("--format", format)
      ->check(CLI::IsMember({"markdown", "md", "json"}));

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score system output");
  std::string system_path, reference_path, judgments_path, quality_path;
  std::string ks = "10,20,50", variant = "f1";
  int overlap_k = 10;
  eval_cmd->add_option("--system", system_path)->required();
  eval_cmd->add_option("--reference", reference_path)->required();
  eval_cmd->add_option("--judgments", judgments_path, "Relevance judgments JSONL");
  eval_cmd->add_option("--quality", quality_path, "Quality judgments JSONL");
  eval_cmd->add_option("--k", ks, "Comma list of cutoffs");
  eval_cmd->add_option("--variant", variant)
      ->check(CLI::IsMember({"f1", "recall"}));
  eval_cmd->add_option("--overlap-k", overlap_k)->check(CLI::PositiveNumber);
  eval_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"markdown", "md", "json"}));
  eval_cmd->add_option("--out", out);

  // overlap
  auto* overlap = app.add_subcommand("overlap", "Cross-section top-k overlap");
  std::size_t k = 10;
  overlap->add_option("--corpus", corpus_path)->required();
  overlap->add_option("--topic", topic);
  overlap->add_option("--k", k)->check(CLI::PositiveNumber);
  overlap->add_option("--config", g.config);
  overlap->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  spdlog::set_level(spdlog::level::from_str(g.log_level));
  spdlog::set_default_logger(spdlog::default_logger()->clone("surveyor"));

  try {
    if (*ingest) {
      if (urls.empty() && fixtures.empty()) {
        std::cerr << "ingest: one of --urls or --fixtures is required\n";
        return 2;
      }
      const PipelineConfig config = g.LoadPipelineConfig();
      ingest::IngestOptions options;
      options.parallelism = parallelism;
      options.extract.min_paragraph_tokens = config.min_paragraph_tokens;
      if (!clone_ref.empty()) {
        options.clone_reference = text::Tokenize(ReadFile(g.Resolve(clone_ref)));
      }
      ingest::IngestReport report;
      Corpus corpus;
      if (!fixtures.empty()) {
        ingest::FixtureSource source(g.Resolve(fixtures));
        const Timestamp ts =
            created_at.empty() ? source.fetched_at() : ParseTimestamp(created_at);
        corpus = ingest::BuildCorpus(topic, source, source, SourceMode::kFixture,
                                     ts, options, &report);
      } else {
        auto provider = ingest::UrlListProvider::FromFile(g.Resolve(urls));
        ingest::HttpFetcher fetcher;
        const Timestamp ts =
            created_at.empty()
                ? std::chrono::floor<std::chrono::seconds>(
                      std::chrono::system_clock::now())
                : ParseTimestamp(created_at);
        corpus = ingest::BuildCorpus(topic, provider, fetcher, SourceMode::kLive,
                                     ts, options, &report);
      }
      WriteCorpus(corpus, g.Resolve(out));
      std::cerr << fmt::format(
          "{} documents, {} paragraphs, {} empty, {} failed\n",
          corpus.documents.size(), corpus.paragraph_count(),
          report.empty_documents, report.failures.size());
      return 0;
    }

    if (*select) {
      const PipelineConfig config = g.LoadPipelineConfig();
      const Corpus corpus = LoadCorpus(g, corpus_path, topic);
      const Models models(config);
      const auto query = section.empty()
                             ? selection::BuildQuery(corpus.topic)
                             : selection::BuildQuery(corpus.topic, section);
      const auto ranking = RankFor(query, corpus, limit ? limit : config.top_l,
                                   config, models.services());
      const auto slices = selection::SelectBudget(ranking, corpus, config.budget);
      std::map<std::string, selection::BudgetSlice> chosen;
      for (const auto& s : slices) chosen.emplace(s.para_id, s);
      std::string data;
      for (const auto& r : ranking) {
        json line = {{"query", query.text},
                     {"para_id", r.para_id},
                     {"rank", r.rank},
                     {"score", r.score},
                     {"ranker", selection::RankerName(r.ranker)}};
        if (auto it = chosen.find(r.para_id); it != chosen.end()) {
          line["token_end"] = it->second.token_end;
          line["truncated"] = it->second.truncated;
        } else {
          line["token_end"] = nullptr;
        }
        data += line.dump() + "\n";
      }
      Emit(g, out, data);
      return 0;
    }

    if (*cluster) {
      PipelineConfig config = g.LoadPipelineConfig();
      config.mode = SelectionMode::kClustering;
      const Corpus corpus = LoadCorpus(g, corpus_path, topic);
      const Models models(config);
      const auto services = models.services();
      embedding::FallbackEmbedder fallback;
      embedding::Embedder& embedder =
          services.embedder != nullptr ? *services.embedder : fallback;
      const auto pool = RankFor(selection::BuildQuery(corpus.topic), corpus,
                                config.pool_l, config, services);
      const selection::ParagraphIndex index(corpus);
      std::vector<std::string> texts;
      for (const auto& r : pool) texts.push_back(index.at(r.para_id).text);
      const auto vectors = embedder.Embed(texts);
      std::vector<clustering::LabeledVector> labeled;
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        labeled.emplace_back(pool[i].para_id, vectors[i]);
      }
      const auto clusters = clustering::Agglomerative(
          labeled, std::min(config.clusters, labeled.size()));
      std::vector<selection::Query> queries;
      for (auto s : selection::kDefaultSections) {
        queries.push_back(selection::BuildQuery(corpus.topic, s));
      }
      const auto assignment =
          clustering::AssignSections(clusters, queries, embedder);
      Emit(g, out, clustering::ClusterListingJsonl(clusters, &assignment));
      return 0;
    }

    if (*survey) {
      const PipelineConfig config = g.LoadPipelineConfig();
      const Corpus corpus = LoadCorpus(g, corpus_path, "");
      const Models models(config);
      const auto built =
          assembler::BuildSurvey(topic, corpus, config, models.services());
      Emit(g, out, assembler::Render(built, assembler::ParseFormat(format)));
      return 0;
    }

    if (*eval_cmd) {
      eval::EvalConfig config;
      config.ks = ParseKs(ks);
      config.variant =
          variant == "recall" ? eval::RougeVariant::kRecall : eval::RougeVariant::kF1;
      config.overlap_k = overlap_k;
      const auto system =
          eval::ParseSystemRecords(ReadFile(g.Resolve(system_path)));
      const auto refs =
          eval::ParseReferenceRecords(ReadFile(g.Resolve(reference_path)));
      std::vector<eval::RelevanceJudgment> relevance;
      if (!judgments_path.empty()) {
        relevance =
            eval::ParseRelevanceJudgments(ReadFile(g.Resolve(judgments_path)));
      }
      std::vector<eval::QualityJudgment> quality;
      if (!quality_path.empty()) {
        quality = eval::ParseQualityJudgments(ReadFile(g.Resolve(quality_path)));
      }
      const auto report =
          eval::EvaluateRun(system, refs, relevance, quality, config);
      Emit(g, out,
           format == "json" ? eval::ReportJson(report)
                            : eval::ReportMarkdown(report));
      return 0;
    }

    if (*overlap) {
      const PipelineConfig config = g.LoadPipelineConfig();
      const Corpus corpus = LoadCorpus(g, corpus_path, topic);
      const Models models(config);
      std::map<std::string, std::vector<std::string>> lists;
      for (auto s : selection::kDefaultSections) {
        const auto ranking =
            RankFor(selection::BuildQuery(corpus.topic, s), corpus,
                    std::max(k, config.top_l), config, models.services());
        auto& ids = lists[std::string(selection::SectionName(s))];
        for (const auto& r : ranking) ids.push_back(r.para_id);
      }
      const auto report = clustering::Overlap(lists, k);
      json pairs = json::array();
      for (const auto& [key, count] : report.pairs) {
        pairs.push_back({{"a", key.first}, {"b", key.second}, {"overlap", count}});
      }
      json doc = {{"topic", corpus.topic}, {"k", k},       {"pairs", pairs},
                  {"min", report.min()},   {"max", report.max()},
                  {"mean", report.mean()}};
      Emit(g, out, doc.dump(2) + "\n");
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
