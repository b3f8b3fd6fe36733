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

#ifndef SURVEYOR_INGEST_H_
#define SURVEYOR_INGEST_H_

#include <span>
#include <string>
#include <vector>

#include "surveyor/corpus.h"
#include "surveyor/fetch.h"
#include "surveyor/html.h"
#include "surveyor/text.h"

namespace surveyor::ingest {

inline constexpr double kCloneThreshold = 0.5;

// Keeps paragraphs whose ROUGE-2 recall against `reference` is strictly
// below `threshold`, preserving order. Throws InvalidArgument when the
// reference is empty.
std::vector<Paragraph> FilterClones(std::span<const Paragraph> paragraphs,
                                    std::span<const text::Token> reference,
                                    double threshold = kCloneThreshold);

struct IngestOptions {
  ExtractOptions extract;
  int parallelism = 4;
  int retries = 1;  // extra attempts for retriable fetch errors
  // When non-empty, paragraphs cloning this summary are removed.
  std::vector<text::Token> clone_reference;
};

struct IngestReport {
  int documents = 0;
  int empty_documents = 0;
  int skipped = 0;  // non-HTML or duplicate pages
  std::vector<std::string> failures;
};

// Fetches every URL the provider returns for `topic`, extracts paragraphs,
// optionally filters clones and assembles a corpus in provider order.
Corpus BuildCorpus(const std::string& topic, SearchProvider& provider,
                   Fetcher& fetcher, SourceMode mode, Timestamp created_at,
                   const IngestOptions& options = {},
                   IngestReport* report = nullptr);

}  // namespace surveyor::ingest

#endif  // SURVEYOR_INGEST_H_
