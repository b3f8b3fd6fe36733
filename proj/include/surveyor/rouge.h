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

#ifndef SURVEYOR_ROUGE_H_
#define SURVEYOR_ROUGE_H_

#include <span>
#include <string>

#include "surveyor/text.h"

namespace surveyor::eval {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Builds a score from a match count and the two denominators. An empty
// denominator yields 0 for that component; f1 is 0 when P + R = 0.
RougeScore MakeRougeScore(double match, double candidate_total,
                          double reference_total);

// Clipped n-gram overlap: match = sum over g of min(count_cand, count_ref).
RougeScore RougeN(std::span<const std::string> candidate,
                  std::span<const std::string> reference, int n);
RougeScore RougeN(std::span<const text::Token> candidate,
                  std::span<const text::Token> reference, int n);

// Sequence-level longest common subsequence.
RougeScore RougeL(std::span<const std::string> candidate,
                  std::span<const std::string> reference);
RougeScore RougeL(std::span<const text::Token> candidate,
                  std::span<const text::Token> reference);

std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b);

}  // namespace surveyor::eval

#endif  // SURVEYOR_ROUGE_H_
