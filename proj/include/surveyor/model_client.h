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

#ifndef SURVEYOR_MODEL_CLIENT_H_
#define SURVEYOR_MODEL_CLIENT_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surveyor/embedding.h"
#include "surveyor/selection.h"
#include "surveyor/summarize.h"

namespace surveyor::model {

// Environment variable that overrides the configured server base URL.
inline constexpr const char* kServerUrlEnv = "SURVEYOR_MODEL_SERVER";

struct Endpoint {
  std::string base_url = "http://127.0.0.1:8808";
  std::chrono::milliseconds timeout{30'000};
  std::size_t max_batch = 64;
};

// POSTs a JSON body and returns the decoded reply. Transport failures and
// 5xx replies raise ProviderUnavailable; 4xx replies and undecodable
// bodies raise ProtocolError carrying the server's error message.
nlohmann::json PostJson(const Endpoint& endpoint, const std::string& path,
                        const nlohmann::json& body);

struct Health {
  std::string status;
  std::map<std::string, std::string> models;
};
Health CheckHealth(const Endpoint& endpoint);

// Client for POST /embed. Batches by endpoint.max_batch, re-normalizes
// vectors, and rejects replies whose dimensions disagree.
class RemoteEmbedder : public embedding::Embedder {
 public:
  explicit RemoteEmbedder(Endpoint endpoint) : endpoint_(std::move(endpoint)) {}

  std::vector<embedding::EmbeddingVector> Embed(
      std::span<const std::string> texts) override;
  embedding::Provider provider() const override {
    return embedding::Provider::kRemote;
  }
  std::size_t dim() const override { return dim_; }

 private:
  Endpoint endpoint_;
  std::atomic<std::size_t> dim_{0};
};

// Client for POST /score.
class RemotePairScorer : public selection::PairScorer {
 public:
  explicit RemotePairScorer(Endpoint endpoint)
      : endpoint_(std::move(endpoint)) {}
  std::vector<double> Score(const std::string& query,
                            std::span<const std::string> passages) override;

 private:
  Endpoint endpoint_;
};

// Client for POST /generate.
class RemoteGenerator : public summarize::Generator {
 public:
  explicit RemoteGenerator(Endpoint endpoint)
      : endpoint_(std::move(endpoint)) {}
  std::string Generate(const std::string& text, int max_tokens) override;

 private:
  Endpoint endpoint_;
};

}  // namespace surveyor::model

#endif  // SURVEYOR_MODEL_CLIENT_H_
