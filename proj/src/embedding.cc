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

#include "surveyor/embedding.h"

#include <algorithm>
#include <cmath>

#include "surveyor/errors.h"
#include "surveyor/hash.h"
#include "surveyor/text.h"

namespace surveyor::embedding {

double EmbeddingVector::norm() const {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

bool EmbeddingVector::is_zero() const {
  for (double v : values) {
    if (v != 0.0) return false;
  }
  return true;
}

double Cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument("cosine: dimension mismatch (" +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
  }
  double dot = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    aa += a.values[i] * a.values[i];
    bb += b.values[i] * b.values[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  const double c = dot / (std::sqrt(aa) * std::sqrt(bb));
  return std::clamp(c, -1.0, 1.0);
}

EmbeddingVector Normalized(EmbeddingVector v) {
  const double n = v.norm();
  if (n == 0.0) return v;
  for (double& x : v.values) x /= n;
  return v;
}

EmbeddingVector Embedder::EmbedOne(const std::string& text) {
  auto out = Embed(std::span<const std::string>(&text, 1));
  return std::move(out.at(0));
}

EmbeddingVector FallbackEmbed(std::string_view input) {
  EmbeddingVector v;
  v.values.assign(kFallbackDim, 0.0);
  const std::u32string cps = text::DecodeUtf8(input);
  bool blank = true;
  for (char32_t c : cps) {
    if (!text::IsUnicodeSpace(c)) {
      blank = false;
      break;
    }
  }
  if (blank || cps.size() < 3) return v;

  std::vector<std::string> encoded(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    text::AppendUtf8(text::ToLower(cps[i]), encoded[i]);
  }
  for (std::size_t i = 0; i + 3 <= cps.size(); ++i) {
    const std::string gram = encoded[i] + encoded[i + 1] + encoded[i + 2];
    v.values[Fnv1a64(gram) % kFallbackDim] += 1.0;
  }
  return Normalized(std::move(v));
}

std::vector<EmbeddingVector> FallbackEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(FallbackEmbed(t));
  return out;
}

}  // namespace surveyor::embedding
