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

#include "surveyor/ingest.h"

#include <algorithm>
#include <atomic>
#include <optional>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "surveyor/errors.h"
#include "surveyor/rouge.h"

namespace surveyor::ingest {

std::vector<Paragraph> FilterClones(std::span<const Paragraph> paragraphs,
                                    std::span<const text::Token> reference,
                                    double threshold) {
  if (reference.empty()) {
    throw InvalidArgument("clone filter needs a nonempty reference");
  }
  std::vector<Paragraph> kept;
  for (const auto& p : paragraphs) {
    const auto tokens = text::Tokenize(p.text);
    const auto score = eval::RougeN(std::span<const text::Token>(tokens),
                                    reference, 2);
    if (score.recall < threshold) kept.push_back(p);
  }
  return kept;
}

namespace {

struct Outcome {
  enum class Status { kOk, kEmpty, kSkipped, kFailed } status = Status::kFailed;
  std::optional<SourceDocument> doc;
  std::string message;
};

Outcome FetchOne(const std::string& url, Fetcher& fetcher,
                 const IngestOptions& options, Timestamp fetched_at) {
  Outcome out;
  for (int attempt = 0;; ++attempt) {
    try {
      FetchedPage page = fetcher.Fetch(url);
      out.doc = ExtractParagraphs(page.body, page.final_url, fetched_at,
                                  options.extract);
      out.status = out.doc ? Outcome::Status::kOk : Outcome::Status::kEmpty;
      return out;
    } catch (const FetchError& e) {
      if (e.retriable() && attempt < options.retries) continue;
      out.status = e.kind() == FetchError::Kind::kNotHtml
                       ? Outcome::Status::kSkipped
                       : Outcome::Status::kFailed;
      out.message = e.what();
      return out;
    }
  }
}

}  // namespace

Corpus BuildCorpus(const std::string& topic, SearchProvider& provider,
                   Fetcher& fetcher, SourceMode mode, Timestamp created_at,
                   const IngestOptions& options, IngestReport* report) {
  if (topic.empty()) throw InvalidArgument("topic must be nonempty");
  const std::vector<std::string> urls = provider.Urls(topic);
  std::vector<Outcome> outcomes(urls.size());

  // Live pages are stamped with the corpus creation time so that the
  // corpus is reproducible from its header alone.
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < urls.size(); i = next++) {
      outcomes[i] = FetchOne(urls[i], fetcher, options, created_at);
    }
  };
  const int workers = std::clamp<int>(options.parallelism, 1,
                                      std::max<int>(1, urls.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  IngestReport local;
  Corpus corpus;
  corpus.topic = topic;
  corpus.created_at = created_at;
  corpus.source_mode = mode;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    Outcome& o = outcomes[i];
    switch (o.status) {
      case Outcome::Status::kFailed:
        spdlog::warn("fetch failed: {}", o.message);
        local.failures.push_back(o.message);
        continue;
      case Outcome::Status::kSkipped:
        ++local.skipped;
        continue;
      case Outcome::Status::kEmpty:
        ++local.empty_documents;
        continue;
      case Outcome::Status::kOk:
        break;
    }
    SourceDocument doc = std::move(*o.doc);
    if (!seen.insert(doc.doc_id).second) {
      ++local.skipped;
      continue;
    }
    if (!options.clone_reference.empty()) {
      doc.paragraphs = FilterClones(doc.paragraphs, options.clone_reference);
      if (doc.paragraphs.empty()) {
        ++local.empty_documents;
        continue;
      }
    }
    ++local.documents;
    corpus.documents.push_back(std::move(doc));
  }
  if (report != nullptr) *report = std::move(local);
  return corpus;
}

}  // namespace surveyor::ingest
