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

#include "surveyor/html.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <unordered_map>

#include "surveyor/text.h"

namespace surveyor::ingest {
namespace {

// Elements whose content is raw text to be skipped wholesale.
constexpr std::array<std::string_view, 7> kRawSkip = {
    "script", "style", "noscript", "template", "svg", "iframe", "textarea"};

// Page chrome; nested content is dropped until the matching close tag.
constexpr std::array<std::string_view, 8> kChrome = {
    "nav", "footer", "header", "aside", "form", "button", "select", "menu"};

constexpr std::array<std::string_view, 33> kBlock = {
    "p",       "div",     "li",         "ul",      "ol",     "h1",
    "h2",      "h3",      "h4",         "h5",      "h6",     "section",
    "article", "main",    "blockquote", "pre",     "table",  "tr",
    "td",      "th",      "dd",         "dt",      "dl",     "figcaption",
    "figure",  "hr",      "address",    "caption", "tbody",  "thead",
    "body",    "details", "summary"};

template <std::size_t N>
bool Contains(const std::array<std::string_view, N>& set, std::string_view s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

bool StartsWithNoCase(std::string_view s, std::size_t pos,
                      std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) {
      return false;
    }
  }
  return true;
}

std::size_t FindNoCase(std::string_view s, std::size_t from,
                       std::string_view needle) {
  for (std::size_t i = from; i + needle.size() <= s.size(); ++i) {
    if (StartsWithNoCase(s, i, needle)) return i;
  }
  return std::string_view::npos;
}

// Index just past the '>' closing a tag that starts at `pos`, honouring
// quoted attribute values.
std::size_t SkipTag(std::string_view s, std::size_t pos) {
  char quote = 0;
  for (std::size_t i = pos; i < s.size(); ++i) {
    const char c = s[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i + 1;
    }
  }
  return s.size();
}

// Collapses whitespace runs to one space, trims, and breaks up any "<"
// directly followed by a letter so no markup-looking residue survives.
std::string Normalize(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (char32_t cp : text::DecodeUtf8(raw)) {
    if (text::IsUnicodeSpace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    if (!out.empty() && out.back() == '<' && cp < 0x80 &&
        std::isalpha(static_cast<int>(cp))) {
      out.push_back(' ');
    }
    text::AppendUtf8(cp, out);
  }
  return out;
}

const std::unordered_map<std::string_view, char32_t>& NamedEntities() {
  static const auto* table = new std::unordered_map<std::string_view, char32_t>{
      {"amp", '&'},      {"lt", '<'},        {"gt", '>'},
      {"quot", '"'},     {"apos", '\''},     {"nbsp", 0xA0},
      {"ndash", 0x2013}, {"mdash", 0x2014},  {"hellip", 0x2026},
      {"lsquo", 0x2018}, {"rsquo", 0x2019},  {"ldquo", 0x201C},
      {"rdquo", 0x201D}, {"laquo", 0xAB},    {"raquo", 0xBB},
      {"copy", 0xA9},    {"reg", 0xAE},      {"trade", 0x2122},
      {"middot", 0xB7},  {"bull", 0x2022},   {"eacute", 0xE9},
      {"egrave", 0xE8},  {"uuml", 0xFC},     {"ouml", 0xF6},
      {"auml", 0xE4},    {"szlig", 0xDF},    {"times", 0xD7},
      {"deg", 0xB0},     {"shy", 0xAD},      {"thinsp", 0x2009},
      {"ensp", 0x2002},  {"emsp", 0x2003},   {"zwj", 0x200D},
      {"zwnj", 0x200C}};
  return *table;
}

}  // namespace

std::string DecodeEntities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    char32_t cp = 0;
    if (!name.empty() && name[0] == '#') {
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const std::string digits(name.substr(hex ? 2 : 1));
      char* end = nullptr;
      const long v = digits.empty() ? -1 : std::strtol(digits.c_str(), &end,
                                                      hex ? 16 : 10);
      if (v > 0 && v <= 0x10FFFF && end != nullptr && *end == '\0' &&
          !(v >= 0xD800 && v <= 0xDFFF)) {
        cp = static_cast<char32_t>(v);
      }
    } else {
      auto it = NamedEntities().find(name);
      if (it != NamedEntities().end()) cp = it->second;
    }
    if (cp == 0) {
      out.push_back(s[i++]);
      continue;
    }
    text::AppendUtf8(cp, out);
    i = semi + 1;
  }
  return out;
}

HtmlBlocks ExtractBlocks(std::string_view html) {
  HtmlBlocks result;
  std::string current;
  int chrome_depth = 0;

  auto flush = [&]() {
    std::string block = Normalize(DecodeEntities(current));
    current.clear();
    if (!block.empty()) result.blocks.push_back(std::move(block));
  };

  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] != '<') {
      if (chrome_depth == 0) current.push_back(html[i]);
      ++i;
      continue;
    }
    if (html.compare(i, 4, "<!--") == 0) {
      const std::size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
      i = SkipTag(html, i);
      continue;
    }
    const bool closing = i + 1 < html.size() && html[i + 1] == '/';
    std::size_t name_begin = i + (closing ? 2 : 1);
    std::size_t name_end = name_begin;
    while (name_end < html.size() &&
           std::isalnum(static_cast<unsigned char>(html[name_end]))) {
      ++name_end;
    }
    if (name_end == name_begin ||
        !std::isalpha(static_cast<unsigned char>(html[name_begin]))) {
      // A bare '<' in text.
      if (chrome_depth == 0) current.push_back('<');
      ++i;
      continue;
    }
    std::string name(html.substr(name_begin, name_end - name_begin));
    for (auto& c : name) c = static_cast<char>(std::tolower(c));
    const std::size_t tag_end = SkipTag(html, name_end);
    const bool self_closing = tag_end >= 2 && html[tag_end - 2] == '/';
    i = tag_end;

    if (!closing && (Contains(kRawSkip, name) || name == "title")) {
      const std::string close = "</" + name;
      const std::size_t end = FindNoCase(html, i, close);
      const std::size_t content_end =
          end == std::string_view::npos ? html.size() : end;
      if (name == "title" && result.title.empty()) {
        result.title =
            Normalize(DecodeEntities(html.substr(i, content_end - i)));
      }
      i = end == std::string_view::npos ? html.size() : SkipTag(html, end);
      continue;
    }
    if (Contains(kChrome, name)) {
      flush();
      if (closing) {
        chrome_depth = std::max(0, chrome_depth - 1);
      } else if (!self_closing) {
        ++chrome_depth;
      }
      continue;
    }
    if (name == "head") {
      flush();
      continue;
    }
    if (Contains(kBlock, name)) {
      flush();
      continue;
    }
    if (name == "br" || name == "img") {
      if (chrome_depth == 0) current.push_back(' ');
      continue;
    }
  }
  flush();
  return result;
}

double AsciiLetterRatio(std::string_view text) {
  std::size_t letters = 0;
  std::size_t ascii = 0;
  for (char32_t cp : text::DecodeUtf8(text)) {
    if (text::Classify(cp) != text::CharClass::kLetter) continue;
    ++letters;
    const char32_t lower = text::ToLower(cp);
    if (lower >= 'a' && lower <= 'z') ++ascii;
  }
  return letters == 0 ? 0.0
                      : static_cast<double>(ascii) / static_cast<double>(letters);
}

std::optional<SourceDocument> ExtractParagraphs(std::string_view html,
                                                std::string_view url,
                                                Timestamp fetched_at,
                                                const ExtractOptions& options) {
  // Lossy UTF-8 normalization before anything else looks at the bytes.
  std::string clean;
  for (char32_t cp : text::DecodeUtf8(html)) text::AppendUtf8(cp, clean);

  HtmlBlocks blocks = ExtractBlocks(clean);
  SourceDocument doc;
  doc.doc_id = MakeDocId(url, html);
  doc.url = std::string(url);
  doc.title = blocks.title;
  doc.fetched_at = fetched_at;

  std::string all_text;
  for (auto& block : blocks.blocks) {
    const int tokens = static_cast<int>(text::Tokenize(block).size());
    if (tokens < options.min_paragraph_tokens) continue;
    Paragraph p;
    p.doc_id = doc.doc_id;
    p.position = static_cast<int>(doc.paragraphs.size());
    p.para_id = MakeParaId(doc.doc_id, p.position);
    p.token_count = tokens;
    all_text += block;
    all_text += ' ';
    p.text = std::move(block);
    doc.paragraphs.push_back(std::move(p));
  }
  if (doc.paragraphs.empty()) return std::nullopt;
  if (AsciiLetterRatio(all_text) < options.min_ascii_letter_ratio) {
    return std::nullopt;
  }
  return doc;
}

}  // namespace surveyor::ingest
