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

#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "surveyor/corpus.h"
#include "surveyor/errors.h"
#include "surveyor/hash.h"
#include "surveyor/text.h"

namespace surveyor {

using nlohmann::json;

std::string FormatTimestamp(Timestamp t) {
  const std::time_t secs = t.time_since_epoch().count();
  std::tm tm{};
  gmtime_r(&secs, &tm);
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z",
                     tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                     tm.tm_min, tm.tm_sec);
}

Timestamp ParseTimestamp(std::string_view s) {
  std::tm tm{};
  char tail = 0;
  const std::string str(s);
  const int got = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c",
                              &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour,
                              &tm.tm_min, &tm.tm_sec, &tail);
  if (got != 7 || tail != 'Z' || str.size() != 20 || tm.tm_mon < 1 ||
      tm.tm_mon > 12 || tm.tm_mday < 1 || tm.tm_mday > 31 || tm.tm_hour > 23 ||
      tm.tm_min > 59 || tm.tm_sec > 60) {
    throw ParseError("bad timestamp '" + str + "'");
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  return Timestamp(std::chrono::seconds(timegm(&tm)));
}

std::string_view SourceModeName(SourceMode mode) {
  return mode == SourceMode::kLive ? "live" : "fixture";
}

SourceMode ParseSourceMode(std::string_view name) {
  if (name == "live") return SourceMode::kLive;
  if (name == "fixture") return SourceMode::kFixture;
  throw ParseError("unknown source_mode '" + std::string(name) + "'");
}

std::size_t Corpus::paragraph_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.paragraphs.size();
  return n;
}

std::vector<const Paragraph*> AllParagraphs(const Corpus& corpus) {
  std::vector<const Paragraph*> out;
  out.reserve(corpus.paragraph_count());
  for (const auto& d : corpus.documents) {
    for (const auto& p : d.paragraphs) out.push_back(&p);
  }
  return out;
}

std::string MakeDocId(std::string_view url, std::string_view body) {
  std::uint64_t h = Fnv1a64(url);
  h = Fnv1a64(std::string_view("\n", 1), h);
  h = Fnv1a64(body, h);
  return "d" + HexDigest(h);
}

std::string MakeParaId(std::string_view doc_id, int position) {
  return fmt::format("{}-p{:04d}", doc_id, position);
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  json header = {{"record", "corpus"},
                 {"topic", corpus.topic},
                 {"source_mode", SourceModeName(corpus.source_mode)},
                 {"created_at", FormatTimestamp(corpus.created_at)}};
  out += header.dump();
  out += '\n';
  for (const auto& d : corpus.documents) {
    json paragraphs = json::array();
    for (const auto& p : d.paragraphs) {
      paragraphs.push_back({{"para_id", p.para_id},
                            {"position", p.position},
                            {"text", p.text},
                            {"token_count", p.token_count}});
    }
    json record = {{"record", "document"},
                   {"doc_id", d.doc_id},
                   {"url", d.url},
                   {"title", d.title},
                   {"fetched_at", FormatTimestamp(d.fetched_at)},
                   {"paragraphs", std::move(paragraphs)}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

namespace {

template <typename T>
T Field(const json& j, const char* key, int line) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(fmt::format("missing field '{}'", key), line);
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(fmt::format("field '{}' has the wrong type", key), line);
  }
}

}  // namespace

Corpus ParseCorpus(std::string_view data) {
  Corpus corpus;
  std::set<std::string> seen_ids;
  bool have_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    std::string_view line = data.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!j.is_object()) throw ParseError("record is not an object", line_no);
    const auto kind = Field<std::string>(j, "record", line_no);
    try {
      if (kind == "corpus") {
        if (have_header) throw ParseError("second corpus header", line_no);
        have_header = true;
        corpus.topic = Field<std::string>(j, "topic", line_no);
        if (corpus.topic.empty()) throw ParseError("empty topic", line_no);
        corpus.source_mode =
            ParseSourceMode(Field<std::string>(j, "source_mode", line_no));
        corpus.created_at =
            ParseTimestamp(Field<std::string>(j, "created_at", line_no));
      } else if (kind == "document") {
        if (!have_header) {
          throw ParseError("document record before corpus header", line_no);
        }
        SourceDocument d;
        d.doc_id = Field<std::string>(j, "doc_id", line_no);
        d.url = Field<std::string>(j, "url", line_no);
        d.title = Field<std::string>(j, "title", line_no);
        d.fetched_at =
            ParseTimestamp(Field<std::string>(j, "fetched_at", line_no));
        const auto paras = Field<json>(j, "paragraphs", line_no);
        if (!paras.is_array()) {
          throw ParseError("'paragraphs' is not an array", line_no);
        }
        int last_position = -1;
        for (const auto& pj : paras) {
          Paragraph p;
          p.doc_id = d.doc_id;
          p.para_id = Field<std::string>(pj, "para_id", line_no);
          p.position = Field<int>(pj, "position", line_no);
          p.text = Field<std::string>(pj, "text", line_no);
          p.token_count = Field<int>(pj, "token_count", line_no);
          if (p.position <= last_position) {
            throw IntegrityError(fmt::format(
                "line {}: paragraph positions are not ascending", line_no));
          }
          last_position = p.position;
          if (!seen_ids.insert(p.para_id).second) {
            throw IntegrityError(fmt::format("line {}: duplicate para_id '{}'",
                                             line_no, p.para_id));
          }
          const auto actual = text::Tokenize(p.text).size();
          if (static_cast<std::size_t>(p.token_count) != actual) {
            throw IntegrityError(fmt::format(
                "line {}: para_id '{}' token_count {} != {}", line_no,
                p.para_id, p.token_count, actual));
          }
          d.paragraphs.push_back(std::move(p));
        }
        corpus.documents.push_back(std::move(d));
      } else {
        throw ParseError("unknown record type '" + kind + "'", line_no);
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), line_no);
    }
  }
  if (!have_header) throw ParseError("missing corpus header record", 1);
  return corpus;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view data) {
  auto tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeCorpus(corpus));
}

Corpus ReadCorpus(const std::filesystem::path& path) {
  return ParseCorpus(ReadFile(path));
}

}  // namespace surveyor
