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

#include "surveyor/config.h"

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "surveyor/corpus.h"
#include "surveyor/errors.h"
#include "surveyor/hash.h"

namespace surveyor {

namespace pt = boost::property_tree;

std::string_view SelectionModeName(SelectionMode mode) {
  return mode == SelectionMode::kClustering ? "clustering" : "retrieval";
}

SelectionMode ParseSelectionMode(std::string_view name) {
  if (name == "retrieval") return SelectionMode::kRetrieval;
  if (name == "clustering") return SelectionMode::kClustering;
  throw InvalidArgument("unknown selection mode '" + std::string(name) + "'");
}

namespace {

const std::map<std::string, std::set<std::string>>& KnownKeys() {
  static const auto* keys = new std::map<std::string, std::set<std::string>>{
      {"selection", {"ranker", "mode", "top_l", "pool_l", "length_normalize"}},
      {"budget", {"max_tokens", "allow_truncation"}},
      {"clustering", {"k"}},
      {"summary",
       {"engine", "word_min", "word_max", "first_k", "sentences", "damping",
        "tolerance", "max_iter", "mmr_lambda", "generate_max_tokens"}},
      {"models", {"embedder", "server", "timeout_ms", "max_batch"}},
      {"ingest", {"min_paragraph_tokens"}}};
  return *keys;
}

template <typename T>
void Read(const pt::ptree& tree, const std::string& key, T& out) {
  auto v = tree.get_optional<std::string>(key);
  if (!v) return;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") {
        out = true;
      } else if (*v == "false" || *v == "0" || *v == "no" || *v == "off") {
        out = false;
      } else {
        throw std::invalid_argument(*v);
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      out = *v;
    } else if constexpr (std::is_floating_point_v<T>) {
      std::size_t used = 0;
      out = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
    } else {
      std::size_t used = 0;
      const long long parsed = std::stoll(*v, &used);
      if (used != v->size() || parsed < 0) throw std::invalid_argument(*v);
      out = static_cast<T>(parsed);
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument(fmt::format("config: bad value '{}' for {}", *v, key));
  }
}

void Validate(const PipelineConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("config: ") + what);
  };
  require(c.top_l >= 1, "selection.top_l must be >= 1");
  require(c.pool_l >= 1, "selection.pool_l must be >= 1");
  require(c.budget.max_tokens >= 1, "budget.max_tokens must be >= 1");
  require(c.clusters >= 1, "clustering.k must be >= 1");
  require(c.summary.word_min < c.summary.word_max,
          "summary.word_min must be below summary.word_max");
  require(c.summary.first_k >= 1, "summary.first_k must be >= 1");
  require(c.summary.out_k >= 1, "summary.sentences must be >= 1");
  require(c.summary.textrank.damping > 0 && c.summary.textrank.damping < 1,
          "summary.damping must lie in (0, 1)");
  require(c.summary.textrank.tolerance > 0, "summary.tolerance must be > 0");
  require(c.summary.textrank.max_iter >= 1, "summary.max_iter must be >= 1");
  require(c.summary.mmr_lambda >= 0 && c.summary.mmr_lambda <= 1,
          "summary.mmr_lambda must lie in [0, 1]");
  require(c.summary.generate_max_tokens >= 1,
          "summary.generate_max_tokens must be >= 1");
  require(c.server.max_batch >= 1, "models.max_batch must be >= 1");
}

}  // namespace

PipelineConfig ParseConfig(std::string_view ini) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(ini)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    auto known = KnownKeys().find(section);
    if (known == KnownKeys().end()) {
      throw InvalidArgument("config: unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key)) {
        throw InvalidArgument("config: unknown key " + section + "." + key);
      }
    }
  }

  PipelineConfig c;
  std::string s;
  if (s.clear(), Read(tree, "selection.ranker", s); !s.empty()) {
    c.ranker = selection::ParseRanker(s);
  }
  if (s.clear(), Read(tree, "selection.mode", s); !s.empty()) {
    c.mode = ParseSelectionMode(s);
  }
  Read(tree, "selection.top_l", c.top_l);
  Read(tree, "selection.pool_l", c.pool_l);
  Read(tree, "selection.length_normalize", c.length_normalize);
  Read(tree, "budget.max_tokens", c.budget.max_tokens);
  Read(tree, "budget.allow_truncation", c.budget.allow_truncation);
  Read(tree, "clustering.k", c.clusters);
  if (s.clear(), Read(tree, "summary.engine", s); !s.empty()) {
    c.engine = summarize::ParseEngine(s);
  }
  Read(tree, "summary.word_min", c.summary.word_min);
  Read(tree, "summary.word_max", c.summary.word_max);
  Read(tree, "summary.first_k", c.summary.first_k);
  Read(tree, "summary.sentences", c.summary.out_k);
  Read(tree, "summary.damping", c.summary.textrank.damping);
  Read(tree, "summary.tolerance", c.summary.textrank.tolerance);
  Read(tree, "summary.max_iter", c.summary.textrank.max_iter);
  Read(tree, "summary.mmr_lambda", c.summary.mmr_lambda);
  Read(tree, "summary.generate_max_tokens", c.summary.generate_max_tokens);
  if (s.clear(), Read(tree, "models.embedder", s); !s.empty()) {
    if (s == "fallback") {
      c.embedder = EmbedderKind::kFallback;
    } else if (s == "remote") {
      c.embedder = EmbedderKind::kRemote;
    } else {
      throw InvalidArgument("config: unknown embedder '" + s + "'");
    }
  }
  Read(tree, "models.server", c.server.base_url);
  long long timeout_ms = c.server.timeout.count();
  Read(tree, "models.timeout_ms", timeout_ms);
  c.server.timeout = std::chrono::milliseconds(timeout_ms);
  Read(tree, "models.max_batch", c.server.max_batch);
  Read(tree, "ingest.min_paragraph_tokens", c.min_paragraph_tokens);
  Validate(c);
  return c;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  return ParseConfig(ReadFile(path));
}

void ApplyEnvironment(PipelineConfig& config) {
  if (const char* url = std::getenv(model::kServerUrlEnv);
      url != nullptr && *url != '\0') {
    config.server.base_url = url;
  }
}

std::string CanonicalConfig(const PipelineConfig& c) {
  const auto b = [](bool v) { return v ? "true" : "false"; };
  std::string out;
  out += "[selection]\n";
  out += fmt::format("ranker = {}\n", selection::RankerName(c.ranker));
  out += fmt::format("mode = {}\n", SelectionModeName(c.mode));
  out += fmt::format("top_l = {}\n", c.top_l);
  out += fmt::format("pool_l = {}\n", c.pool_l);
  out += fmt::format("length_normalize = {}\n", b(c.length_normalize));
  out += "\n[budget]\n";
  out += fmt::format("max_tokens = {}\n", c.budget.max_tokens);
  out += fmt::format("allow_truncation = {}\n", b(c.budget.allow_truncation));
  out += "\n[clustering]\n";
  out += fmt::format("k = {}\n", c.clusters);
  out += "\n[summary]\n";
  out += fmt::format("engine = {}\n", summarize::EngineName(c.engine));
  out += fmt::format("word_min = {}\n", c.summary.word_min);
  out += fmt::format("word_max = {}\n", c.summary.word_max);
  out += fmt::format("first_k = {}\n", c.summary.first_k);
  out += fmt::format("sentences = {}\n", c.summary.out_k);
  out += fmt::format("damping = {}\n", c.summary.textrank.damping);
  out += fmt::format("tolerance = {}\n", c.summary.textrank.tolerance);
  out += fmt::format("max_iter = {}\n", c.summary.textrank.max_iter);
  out += fmt::format("mmr_lambda = {}\n", c.summary.mmr_lambda);
  out += fmt::format("generate_max_tokens = {}\n", c.summary.generate_max_tokens);
  out += "\n[models]\n";
  out += fmt::format("embedder = {}\n",
                     c.embedder == EmbedderKind::kRemote ? "remote" : "fallback");
  out += fmt::format("server = {}\n", c.server.base_url);
  out += fmt::format("timeout_ms = {}\n", c.server.timeout.count());
  out += fmt::format("max_batch = {}\n", c.server.max_batch);
  out += "\n[ingest]\n";
  out += fmt::format("min_paragraph_tokens = {}\n", c.min_paragraph_tokens);
  return out;
}

std::string ConfigHash(const PipelineConfig& config) {
  return HexDigest(Fnv1a64(CanonicalConfig(config)));
}

}  // namespace surveyor
