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

#include "surveyor/model_client.h"

#include <cmath>

#include <fmt/format.h>
#include <httplib.h>

#include "surveyor/errors.h"
#include "surveyor/fetch.h"

namespace surveyor::model {

using nlohmann::json;

namespace {

httplib::Client MakeClient(const Endpoint& endpoint) {
  ingest::UrlParts parts;
  try {
    parts = ingest::SplitUrl(endpoint.base_url);
  } catch (const InvalidArgument& e) {
    throw ProviderUnavailable(std::string("model server: ") + e.what());
  }
  httplib::Client client(parts.origin());
  const auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
      endpoint.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  return client;
}

std::string PathPrefix(const Endpoint& endpoint) {
  std::string target = ingest::SplitUrl(endpoint.base_url).target;
  while (!target.empty() && target.back() == '/') target.pop_back();
  return target;
}

std::string ErrorMessage(const std::string& body) {
  try {
    const auto j = json::parse(body);
    const auto& err = j.at("error");
    return fmt::format("{}: {}", err.at("code").dump(),
                       err.at("message").get<std::string>());
  } catch (const json::exception&) {
    return body.substr(0, 200);
  }
}

json Decode(const httplib::Result& result, const std::string& path) {
  if (!result) {
    throw ProviderUnavailable(fmt::format("model server {}: {}", path,
                                          httplib::to_string(result.error())));
  }
  if (result->status >= 500) {
    throw ProviderUnavailable(fmt::format("model server {}: HTTP {} {}", path,
                                          result->status,
                                          ErrorMessage(result->body)));
  }
  if (result->status != 200) {
    throw ProtocolError(fmt::format("model server {}: HTTP {} {}", path,
                                    result->status,
                                    ErrorMessage(result->body)));
  }
  try {
    return json::parse(result->body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(fmt::format("model server {}: bad JSON: {}", path,
                                    e.what()));
  }
}

}  // namespace

json PostJson(const Endpoint& endpoint, const std::string& path,
              const json& body) {
  auto client = MakeClient(endpoint);
  auto result = client.Post(PathPrefix(endpoint) + path, body.dump(),
                            "application/json");
  return Decode(result, path);
}

Health CheckHealth(const Endpoint& endpoint) {
  auto client = MakeClient(endpoint);
  const json j = Decode(client.Get(PathPrefix(endpoint) + "/health"), "/health");
  Health h;
  try {
    h.status = j.at("status").get<std::string>();
    if (j.contains("models")) {
      for (const auto& [k, v] : j.at("models").items()) {
        h.models[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("/health: ") + e.what());
  }
  return h;
}

std::vector<embedding::EmbeddingVector> RemoteEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<embedding::EmbeddingVector> out;
  out.reserve(texts.size());
  const std::size_t batch = std::max<std::size_t>(1, endpoint_.max_batch);
  std::size_t dim = dim_.load();
  for (std::size_t begin = 0; begin < texts.size(); begin += batch) {
    const std::size_t end = std::min(texts.size(), begin + batch);
    json req = {{"texts", json::array()}};
    for (std::size_t i = begin; i < end; ++i) req["texts"].push_back(texts[i]);
    const json reply = PostJson(endpoint_, "/embed", req);
    try {
      const auto reply_dim = reply.at("dim").get<std::size_t>();
      const auto& vectors = reply.at("vectors");
      if (vectors.size() != end - begin) {
        throw ProtocolError(fmt::format("/embed returned {} vectors for {} texts",
                                        vectors.size(), end - begin));
      }
      if (dim != 0 && reply_dim != dim) {
        throw ProtocolError(
            fmt::format("/embed dimension changed from {} to {}", dim, reply_dim));
      }
      dim = reply_dim;
      for (const auto& v : vectors) {
        embedding::EmbeddingVector ev;
        ev.values = v.get<std::vector<double>>();
        if (ev.dim() != dim) {
          throw ProtocolError(fmt::format(
              "/embed vector of length {} in a dim-{} reply", ev.dim(), dim));
        }
        for (double x : ev.values) {
          if (!std::isfinite(x)) throw ProtocolError("/embed non-finite value");
        }
        out.push_back(embedding::Normalized(std::move(ev)));
      }
    } catch (const json::exception& e) {
      throw ProtocolError(std::string("/embed: ") + e.what());
    }
  }
  dim_ = dim;
  return out;
}

std::vector<double> RemotePairScorer::Score(
    const std::string& query, std::span<const std::string> passages) {
  json req = {{"query", query}, {"passages", json::array()}};
  for (const auto& p : passages) req["passages"].push_back(p);
  const json reply = PostJson(endpoint_, "/score", req);
  try {
    return reply.at("scores").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("/score: ") + e.what());
  }
}

std::string RemoteGenerator::Generate(const std::string& text,
                                      int max_tokens) {
  const json reply = PostJson(endpoint_, "/generate",
                              {{"text", text}, {"max_tokens", max_tokens}});
  std::string summary;
  try {
    summary = reply.at("summary").get<std::string>();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("/generate: ") + e.what());
  }
  if (summary.empty()) throw ProtocolError("/generate returned an empty summary");
  return summary;
}

}  // namespace surveyor::model
