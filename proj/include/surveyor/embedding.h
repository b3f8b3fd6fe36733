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

#ifndef SURVEYOR_EMBEDDING_H_
#define SURVEYOR_EMBEDDING_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace surveyor::embedding {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  double norm() const;
  bool is_zero() const;

  bool operator==(const EmbeddingVector&) const = default;
};

// dot(a, b) / (|a| |b|), or 0 when either vector is zero. Throws
// InvalidArgument on a dimension mismatch.
double Cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Scales to unit L2 norm; zero vectors are returned unchanged.
EmbeddingVector Normalized(EmbeddingVector v);

enum class Provider { kRemote, kFallback };

class Embedder {
 public:
  virtual ~Embedder() = default;

  // One vector per input text, unit norm or zero for blank text. Remote
  // providers throw ProviderUnavailable or ProtocolError.
  virtual std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) = 0;

  virtual Provider provider() const = 0;
  // 0 until the first batch for providers that learn it from the server.
  virtual std::size_t dim() const = 0;

  EmbeddingVector EmbedOne(const std::string& text);
};

inline constexpr std::size_t kFallbackDim = 256;

// Character 3-gram counts of the lowercased text (code points, hashed on
// their UTF-8 bytes with FNV-1a 64) folded into kFallbackDim buckets and
// L2-normalized. Pure and thread-safe.
EmbeddingVector FallbackEmbed(std::string_view text);

class FallbackEmbedder : public Embedder {
 public:
  std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) override;
  Provider provider() const override { return Provider::kFallback; }
  std::size_t dim() const override { return kFallbackDim; }
};

}  // namespace surveyor::embedding

#endif  // SURVEYOR_EMBEDDING_H_
