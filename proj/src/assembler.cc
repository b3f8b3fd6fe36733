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

#include "surveyor/assembler.h"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "surveyor/clustering.h"
#include "surveyor/errors.h"
#include "surveyor/hash.h"
#include "surveyor/text.h"

namespace surveyor::assembler {

namespace {

using nlohmann::json;
using selection::Query;
using selection::Ranking;
using selection::RankerKind;

embedding::FallbackEmbedder& DefaultEmbedder() {
  static embedding::FallbackEmbedder embedder;
  return embedder;
}

struct RankOutcome {
  Ranking ranking;
  RankerKind used;
};

RankOutcome Rank(const Query& query, const Corpus& corpus, std::size_t limit,
                 const PipelineConfig& config, const Services& services,
                 embedding::Embedder& embedder) {
  selection::TfidfOptions tfidf{.length_normalize = config.length_normalize};
  try {
    switch (config.ranker) {
      case RankerKind::kTfidf:
        break;
      case RankerKind::kSemantic:
        return {selection::SemanticRank(query, corpus, limit, embedder),
                RankerKind::kSemantic};
      case RankerKind::kRelevance:
        if (services.scorer == nullptr) {
          throw RankerUnavailable("no pair scorer configured");
        }
        return {selection::RelevanceRank(query, corpus, limit, *services.scorer,
                                         config.server.max_batch),
                RankerKind::kRelevance};
    }
  } catch (const RankerUnavailable& e) {
    spdlog::warn("ranker {} unavailable ({}); using tfidf",
                 selection::RankerName(config.ranker), e.what());
  }
  return {selection::TfidfRank(query, corpus, limit, tfidf), RankerKind::kTfidf};
}

void FillDraft(SectionDraft& draft, const Ranking& ranking,
               const Corpus& corpus, const PipelineConfig& config,
               const Services& services, embedding::Embedder& embedder) {
  const selection::ParagraphIndex index(corpus);
  const auto slices = selection::SelectBudget(ranking, corpus, config.budget);
  std::map<std::string, const selection::ScoredParagraph*> by_id;
  for (const auto& s : ranking) by_id.emplace(s.para_id, &s);

  std::vector<text::Sentence> sentences;
  std::set<std::string> seen;
  std::string selected_text;
  for (const auto& slice : slices) {
    const auto& scored = *by_id.at(slice.para_id);
    draft.selected.push_back({slice.para_id, scored.score, scored.rank,
                              slice.token_end, slice.truncated});
    const std::string piece = selection::SliceText(index.at(slice.para_id),
                                                   slice.token_end);
    if (!selected_text.empty()) selected_text += "\n\n";
    selected_text += piece;
    // Split per paragraph so no sentence spans two sources. Web copies
    // repeat sentences verbatim; only the first occurrence is kept.
    for (auto& s : text::SplitSentences(piece)) {
      if (seen.insert(s.text).second) sentences.push_back(std::move(s));
    }
  }
  if (sentences.empty()) {
    draft.empty = true;
    return;
  }
  draft.summary =
      summarize::Summarize(config.engine, draft.query, sentences, selected_text,
                           config.summary, embedder, services.generator);
  draft.empty = draft.summary.text.empty();
}

}  // namespace

std::string CorpusHash(const Corpus& corpus) {
  return HexDigest(Fnv1a64(SerializeCorpus(corpus)));
}

Survey BuildSurvey(std::string_view topic, const Corpus& corpus,
                   const PipelineConfig& config, const Services& services,
                   const SurveyTemplate& survey_template) {
  if (corpus.topic != topic) {
    throw InvalidArgument(fmt::format("corpus topic '{}' does not match '{}'",
                                      corpus.topic, topic));
  }
  if (corpus.paragraph_count() == 0) {
    throw Error(fmt::format("corpus for '{}' has no paragraphs", topic));
  }
  embedding::Embedder& embedder =
      services.embedder != nullptr ? *services.embedder : DefaultEmbedder();

  Survey survey;
  survey.topic = std::string(topic);
  survey.survey_template = survey_template;
  survey.provenance = {CorpusHash(corpus),
                       ConfigHash(config),
                       config.engine,
                       config.ranker,
                       config.mode,
                       FormatTimestamp(corpus.created_at)};

  std::vector<Query> queries;
  for (auto section : survey_template.sections) {
    queries.push_back(selection::BuildQuery(topic, section));
  }

  if (config.mode == SelectionMode::kRetrieval) {
    for (std::size_t i = 0; i < queries.size(); ++i) {
      SectionDraft draft;
      draft.section = survey_template.sections[i];
      draft.query = queries[i];
      auto ranked =
          Rank(queries[i], corpus, config.top_l, config, services, embedder);
      draft.ranker = ranked.used;
      FillDraft(draft, ranked.ranking, corpus, config, services, embedder);
      survey.drafts.push_back(std::move(draft));
    }
    return survey;
  }

  // Clustering: one generic pool, clustered, each section confined to the
  // cluster it is assigned.
  const auto pool = Rank(selection::BuildQuery(topic), corpus, config.pool_l,
                         config, services, embedder);
  const selection::ParagraphIndex index(corpus);
  std::vector<std::string> texts;
  for (const auto& s : pool.ranking) texts.push_back(index.at(s.para_id).text);
  const auto vectors = embedder.Embed(texts);
  std::vector<clustering::LabeledVector> labeled;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    labeled.emplace_back(pool.ranking[i].para_id, vectors[i]);
  }
  const std::size_t k = std::min(config.clusters, labeled.size());
  const auto clusters = clustering::Agglomerative(labeled, k);
  const auto assignment = clustering::AssignSections(clusters, queries, embedder);

  for (std::size_t i = 0; i < queries.size(); ++i) {
    const int cluster_id = assignment.section_to_cluster[i].second;
    SectionDraft draft;
    draft.section = survey_template.sections[i];
    draft.query = queries[i];
    draft.cluster_id = cluster_id;
    const Corpus sub =
        selection::Restrict(corpus, clusters[cluster_id].members);
    auto ranked = Rank(queries[i], sub, config.top_l, config, services, embedder);
    draft.ranker = ranked.used;
    FillDraft(draft, ranked.ranking, sub, config, services, embedder);
    survey.drafts.push_back(std::move(draft));
  }
  return survey;
}

std::vector<Survey> BuildSurveys(const std::vector<Corpus>& corpora,
                                 const PipelineConfig& config,
                                 const Services& services, std::size_t workers) {
  workers = std::max<std::size_t>(1, workers);
  std::vector<Survey> out(corpora.size());
  for (std::size_t begin = 0; begin < corpora.size(); begin += workers) {
    const std::size_t end = std::min(corpora.size(), begin + workers);
    std::vector<std::future<Survey>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, [&, i] {
        return BuildSurvey(corpora[i].topic, corpora[i], config, services);
      }));
    }
    for (std::size_t i = begin; i < end; ++i) out[i] = batch[i - begin].get();
  }
  return out;
}

Format ParseFormat(std::string_view name) {
  if (name == "markdown" || name == "md") return Format::kMarkdown;
  if (name == "json") return Format::kJson;
  throw InvalidArgument("unknown format '" + std::string(name) + "'");
}

namespace {

std::string RenderMarkdown(const Survey& survey) {
  std::string out = fmt::format("# {}\n", survey.topic);
  for (const auto& draft : survey.drafts) {
    out += fmt::format("\n## {}\n\n", selection::SectionName(draft.section));
    out += draft.empty ? std::string(kEmptySectionMarker) : draft.summary.text;
    out += "\n";
  }
  const auto& p = survey.provenance;
  out += "\n---\n\n";
  out += fmt::format(
      "Corpus `{}`, config `{}`, ranker {}, engine {}, mode {}, corpus "
      "created {}.\n",
      p.corpus_hash, p.config_hash, selection::RankerName(p.ranker),
      summarize::EngineName(p.engine), SelectionModeName(p.mode),
      p.corpus_created_at);
  return out;
}

json DraftJson(const SectionDraft& d) {
  json selected = json::array();
  for (const auto& s : d.selected) {
    selected.push_back({{"para_id", s.para_id},
                        {"score", s.score},
                        {"rank", s.rank},
                        {"token_end", s.token_end},
                        {"truncated", s.truncated}});
  }
  return {{"section", selection::SectionName(d.section)},
          {"query", d.query.text},
          {"ranker", selection::RankerName(d.ranker)},
          {"selected", std::move(selected)},
          {"cluster_id", d.cluster_id ? json(*d.cluster_id) : json(nullptr)},
          {"empty", d.empty},
          {"summary",
           {{"text", d.summary.text},
            {"engine", summarize::EngineName(d.summary.engine)},
            {"source_indices", d.summary.source_indices},
            {"word_count", d.summary.word_count},
            {"below_minimum", d.summary.below_minimum},
            {"downgraded", d.summary.downgraded}}}};
}

std::string RenderJson(const Survey& survey) {
  json sections = json::array();
  for (auto s : survey.survey_template.sections) {
    sections.push_back(selection::SectionName(s));
  }
  json drafts = json::array();
  for (const auto& d : survey.drafts) drafts.push_back(DraftJson(d));
  const auto& p = survey.provenance;
  json doc = {{"topic", survey.topic},
              {"template", std::move(sections)},
              {"drafts", std::move(drafts)},
              {"provenance",
               {{"corpus_hash", p.corpus_hash},
                {"config_hash", p.config_hash},
                {"engine", summarize::EngineName(p.engine)},
                {"ranker", selection::RankerName(p.ranker)},
                {"mode", SelectionModeName(p.mode)},
                {"corpus_created_at", p.corpus_created_at}}}};
  return doc.dump(2) + "\n";
}

}  // namespace

std::string Render(const Survey& survey, Format format) {
  switch (format) {
    case Format::kMarkdown:
      return RenderMarkdown(survey);
    case Format::kJson:
      return RenderJson(survey);
  }
  throw InvalidArgument("unknown format");
}

Survey ParseSurveyJson(std::string_view text) {
  try {
    const json doc = json::parse(text);
    Survey survey;
    survey.topic = doc.at("topic").get<std::string>();
    survey.survey_template.sections.clear();
    for (const auto& name : doc.at("template")) {
      survey.survey_template.sections.push_back(
          selection::ParseSection(name.get<std::string>()));
    }
    for (const auto& d : doc.at("drafts")) {
      SectionDraft draft;
      draft.section = selection::ParseSection(d.at("section").get<std::string>());
      draft.query = selection::BuildQuery(survey.topic, draft.section);
      if (draft.query.text != d.at("query").get<std::string>()) {
        throw ParseError("query does not match its section");
      }
      draft.ranker = selection::ParseRanker(d.at("ranker").get<std::string>());
      for (const auto& s : d.at("selected")) {
        draft.selected.push_back({s.at("para_id").get<std::string>(),
                                  s.at("score").get<double>(),
                                  s.at("rank").get<int>(),
                                  s.at("token_end").get<int>(),
                                  s.at("truncated").get<bool>()});
      }
      if (!d.at("cluster_id").is_null()) {
        draft.cluster_id = d.at("cluster_id").get<int>();
      }
      draft.empty = d.at("empty").get<bool>();
      const auto& s = d.at("summary");
      draft.summary.text = s.at("text").get<std::string>();
      draft.summary.engine =
          summarize::ParseEngine(s.at("engine").get<std::string>());
      draft.summary.source_indices = s.at("source_indices").get<std::vector<int>>();
      draft.summary.word_count = s.at("word_count").get<int>();
      draft.summary.below_minimum = s.at("below_minimum").get<bool>();
      draft.summary.downgraded = s.at("downgraded").get<bool>();
      survey.drafts.push_back(std::move(draft));
    }
    if (survey.drafts.size() != survey.survey_template.sections.size()) {
      throw ParseError("drafts do not align with the template");
    }
    const auto& p = doc.at("provenance");
    survey.provenance = {
        p.at("corpus_hash").get<std::string>(),
        p.at("config_hash").get<std::string>(),
        summarize::ParseEngine(p.at("engine").get<std::string>()),
        selection::ParseRanker(p.at("ranker").get<std::string>()),
        ParseSelectionMode(p.at("mode").get<std::string>()),
        p.at("corpus_created_at").get<std::string>()};
    return survey;
  } catch (const json::exception& e) {
    throw ParseError(std::string("survey json: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("survey json: ") + e.what());
  }
}

}  // namespace surveyor::assembler
