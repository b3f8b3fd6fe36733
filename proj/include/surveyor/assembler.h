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

#ifndef SURVEYOR_ASSEMBLER_H_
#define SURVEYOR_ASSEMBLER_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surveyor/config.h"
#include "surveyor/corpus.h"
#include "surveyor/embedding.h"
#include "surveyor/selection.h"
#include "surveyor/summarize.h"

namespace surveyor::assembler {

struct SurveyTemplate {
  std::vector<selection::Section> sections{selection::kDefaultSections.begin(),
                                           selection::kDefaultSections.end()};

  bool operator==(const SurveyTemplate&) const = default;
};

struct SelectedParagraph {
  std::string para_id;
  double score = 0.0;
  int rank = 0;
  int token_end = 0;
  bool truncated = false;

  bool operator==(const SelectedParagraph&) const = default;
};

struct SectionDraft {
  selection::Section section = selection::Section::kIntroduction;
  selection::Query query;
  // The ranker that produced `selected`; differs from the configured one
  // when it was unavailable and TF-IDF stood in.
  selection::RankerKind ranker = selection::RankerKind::kTfidf;
  std::vector<SelectedParagraph> selected;
  std::optional<int> cluster_id;
  summarize::SectionSummary summary;
  bool empty = false;  // no candidates, so no summary

  bool operator==(const SectionDraft&) const = default;
};

struct Provenance {
  std::string corpus_hash;
  std::string config_hash;
  summarize::Engine engine = summarize::Engine::kTextRank;
  selection::RankerKind ranker = selection::RankerKind::kTfidf;
  SelectionMode mode = SelectionMode::kRetrieval;
  std::string corpus_created_at;

  bool operator==(const Provenance&) const = default;
};

struct Survey {
  std::string topic;
  SurveyTemplate survey_template;
  std::vector<SectionDraft> drafts;  // aligned with survey_template
  Provenance provenance;

  bool operator==(const Survey&) const = default;
};

// Optional model-backed services. A null embedder means the fallback one; a
// null scorer makes the relevance ranker unavailable; a null generator makes
// the abstractive engine degrade to TextRank.
struct Services {
  embedding::Embedder* embedder = nullptr;
  selection::PairScorer* scorer = nullptr;
  summarize::Generator* generator = nullptr;
};

std::string CorpusHash(const Corpus& corpus);

// Throws InvalidArgument when the corpus belongs to another topic and Error
// when it has no paragraphs.
Survey BuildSurvey(std::string_view topic, const Corpus& corpus,
                   const PipelineConfig& config, const Services& services = {},
                   const SurveyTemplate& survey_template = {});

// Builds one survey per corpus on up to `workers` threads. Output order
// follows input order.
std::vector<Survey> BuildSurveys(const std::vector<Corpus>& corpora,
                                 const PipelineConfig& config,
                                 const Services& services, std::size_t workers);

enum class Format { kMarkdown, kJson };

Format ParseFormat(std::string_view name);  // throws InvalidArgument

std::string Render(const Survey& survey, Format format);
Survey ParseSurveyJson(std::string_view json);  // throws ParseError

inline constexpr std::string_view kEmptySectionMarker = "(no content found)";

}  // namespace surveyor::assembler

#endif  // SURVEYOR_ASSEMBLER_H_
