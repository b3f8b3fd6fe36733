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

#include "surveyor/rouge.h"

#include <algorithm>
#include <vector>

namespace surveyor::eval {

RougeScore MakeRougeScore(double match, double candidate_total,
                          double reference_total) {
  RougeScore s;
  s.precision = candidate_total > 0 ? match / candidate_total : 0.0;
  s.recall = reference_total > 0 ? match / reference_total : 0.0;
  const double denom = s.precision + s.recall;
  s.f1 = denom > 0 ? 2.0 * s.precision * s.recall / denom : 0.0;
  return s;
}

RougeScore RougeN(std::span<const std::string> candidate,
                  std::span<const std::string> reference, int n) {
  const auto cand = text::NGrams(candidate, n);
  const auto ref = text::NGrams(reference, n);
  int match = 0;
  // Merge join over the two ordered maps.
  auto c = cand.counts.begin();
  auto r = ref.counts.begin();
  while (c != cand.counts.end() && r != ref.counts.end()) {
    if (c->first < r->first) {
      ++c;
    } else if (r->first < c->first) {
      ++r;
    } else {
      match += std::min(c->second, r->second);
      ++c;
      ++r;
    }
  }
  return MakeRougeScore(match, cand.total(), ref.total());
}

RougeScore RougeN(std::span<const text::Token> candidate,
                  std::span<const text::Token> reference, int n) {
  const auto c = text::Surfaces(candidate);
  const auto r = text::Surfaces(reference);
  return RougeN(std::span<const std::string>(c),
                std::span<const std::string>(r), n);
}

std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore RougeL(std::span<const std::string> candidate,
                  std::span<const std::string> reference) {
  const double lcs = static_cast<double>(LcsLength(candidate, reference));
  return MakeRougeScore(lcs, static_cast<double>(candidate.size()),
                        static_cast<double>(reference.size()));
}

RougeScore RougeL(std::span<const text::Token> candidate,
                  std::span<const text::Token> reference) {
  const auto c = text::Surfaces(candidate);
  const auto r = text::Surfaces(reference);
  return RougeL(std::span<const std::string>(c),
                std::span<const std::string>(r));
}

}  // namespace surveyor::eval
