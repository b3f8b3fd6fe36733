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

#ifndef SURVEYOR_HTML_H_
#define SURVEYOR_HTML_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surveyor/corpus.h"

namespace surveyor::ingest {

struct ExtractOptions {
  int min_paragraph_tokens = 10;
  // Documents whose alphabetic characters are less than this fraction
  // ASCII [a-z] (after lowercasing) are treated as non-English.
  double min_ascii_letter_ratio = 0.6;
};

// Visible text of a page split at block-level elements. Script, style,
// nav, footer and similar chrome are dropped.
struct HtmlBlocks {
  std::string title;
  std::vector<std::string> blocks;
};

HtmlBlocks ExtractBlocks(std::string_view html);

// Decodes named and numeric character references.
std::string DecodeEntities(std::string_view s);

// Fraction of alphabetic characters that are ASCII letters; 0 when the
// text has no alphabetic characters.
double AsciiLetterRatio(std::string_view text);

// Builds a SourceDocument from a page. Returns nullopt (the empty-document
// signal) when no paragraph survives the length floor or the page fails
// the English check.
std::optional<SourceDocument> ExtractParagraphs(
    std::string_view html, std::string_view url, Timestamp fetched_at,
    const ExtractOptions& options = {});

}  // namespace surveyor::ingest

#endif  // SURVEYOR_HTML_H_
