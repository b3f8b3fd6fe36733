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

#ifndef SURVEYOR_CORPUS_H_
#define SURVEYOR_CORPUS_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace surveyor {

using Timestamp = std::chrono::sys_seconds;

// ISO-8601 UTC, e.g. "2026-01-31T12:00:00Z".
std::string FormatTimestamp(Timestamp t);
Timestamp ParseTimestamp(std::string_view s);  // throws ParseError

enum class SourceMode { kLive, kFixture };

std::string_view SourceModeName(SourceMode mode);
SourceMode ParseSourceMode(std::string_view name);

struct Paragraph {
  std::string para_id;  // doc_id + "-p" + zero-padded ordinal
  std::string doc_id;
  int position = 0;
  std::string text;
  int token_count = 0;

  bool operator==(const Paragraph&) const = default;
};

struct SourceDocument {
  std::string doc_id;
  std::string url;
  std::string title;
  Timestamp fetched_at{};
  std::vector<Paragraph> paragraphs;

  bool operator==(const SourceDocument&) const = default;
};

struct Corpus {
  std::string topic;
  std::vector<SourceDocument> documents;
  Timestamp created_at{};
  SourceMode source_mode = SourceMode::kFixture;

  bool operator==(const Corpus&) const = default;

  std::size_t paragraph_count() const;
};

// Paragraphs in document order, then position order.
std::vector<const Paragraph*> AllParagraphs(const Corpus& corpus);

// Deterministic doc_id derived from the final URL and the page body.
std::string MakeDocId(std::string_view url, std::string_view body);
std::string MakeParaId(std::string_view doc_id, int position);

// JSON-lines: a corpus header record followed by one record per document.
std::string SerializeCorpus(const Corpus& corpus);

// Throws ParseError (with the offending line) on malformed input and
// IntegrityError on duplicate para_ids or inconsistent token counts.
Corpus ParseCorpus(std::string_view data);

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus ReadCorpus(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);
std::string ReadFile(const std::filesystem::path& path);

}  // namespace surveyor

#endif  // SURVEYOR_CORPUS_H_
