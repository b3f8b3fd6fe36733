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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

namespace surveyor::oracle {

namespace {

Prf FromCounts(double match, double cand_total, double ref_total) {
  Prf s;
  s.precision = cand_total > 0 ? match / cand_total : 0.0;
  s.recall = ref_total > 0 ? match / ref_total : 0.0;
  s.f1 = s.precision + s.recall > 0
             ? 2 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

std::unordered_map<std::string, int> Grams(const std::vector<std::string>& t,
                                           int n) {
  std::unordered_map<std::string, int> out;
  for (int i = 0; i + n <= static_cast<int>(t.size()); ++i) {
    std::string key;
    for (int j = 0; j < n; ++j) key += t[i + j] + " ";
    ++out[key];
  }
  return out;
}

bool IsSubsequence(const std::vector<std::string>& s,
                   const std::vector<std::string>& of) {
  std::size_t j = 0;
  for (const auto& w : of) {
    if (j < s.size() && s[j] == w) ++j;
  }
  return j == s.size();
}

}  // namespace

Prf RougeN(const std::vector<std::string>& cand,
           const std::vector<std::string>& ref, int n) {
  const auto c = Grams(cand, n);
  const auto r = Grams(ref, n);
  int match = 0, c_total = 0, r_total = 0;
  for (const auto& [g, count] : c) {
    c_total += count;
    auto it = r.find(g);
    if (it != r.end()) match += std::min(count, it->second);
  }
  for (const auto& [g, count] : r) r_total += count;
  return FromCounts(match, c_total, r_total);
}

int LcsBySubsets(const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
  const int n = static_cast<int>(a.size());
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int bits = __builtin_popcount(mask);
    if (bits <= best) continue;
    std::vector<std::string> sub;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    if (IsSubsequence(sub, b)) best = bits;
  }
  return best;
}

Prf RougeL(const std::vector<std::string>& cand,
           const std::vector<std::string>& ref) {
  return FromCounts(LcsBySubsets(cand, ref), cand.size(), ref.size());
}

std::vector<std::vector<double>> TextRankWeights(
    const std::vector<std::vector<std::string>>& words) {
  const std::size_t n = words.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::set<std::string> a(words[i].begin(), words[i].end());
      std::set<std::string> b(words[j].begin(), words[j].end());
      std::vector<std::string> shared;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(shared));
      const double denom = std::log(static_cast<double>(words[i].size())) +
                           std::log(static_cast<double>(words[j].size()));
      if (denom > 0 && !shared.empty()) w[i][j] = shared.size() / denom;
    }
  }
  return w;
}

std::vector<double> DensePageRank(const std::vector<std::vector<double>>& w,
                                  double damping) {
  const std::size_t n = w.size();
  // Column-stochastic transition matrix; edgeless nodes jump uniformly.
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double out = 0.0;
    for (std::size_t i = 0; i < n; ++i) out += w[j][i];
    for (std::size_t i = 0; i < n; ++i) {
      m[i][j] = out > 0 ? w[j][i] / out : 1.0 / n;
    }
  }
  std::vector<double> x(n, 1.0 / n), next(n);
  for (int iter = 0; iter < 100000; ++iter) {
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m[i][j] * x[j];
      next[i] = (1 - damping) / n + damping * s;
      delta = std::max(delta, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    if (delta < 1e-15) break;
  }
  double total = 0.0;
  for (double v : x) total += v;
  for (double& v : x) v /= total;
  return x;
}

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / std::sqrt(na * nb);
}

std::vector<std::vector<std::string>> Agglomerative(
    const std::vector<std::pair<std::string, std::vector<double>>>& points,
    std::size_t k) {
  std::vector<std::set<std::string>> clusters;
  std::unordered_map<std::string, const std::vector<double>*> vec;
  for (const auto& [id, v] : points) {
    clusters.push_back({id});
    vec[id] = &v;
  }
  auto linkage = [&](const std::set<std::string>& a,
                     const std::set<std::string>& b) {
    double sum = 0.0;
    for (const auto& x : a) {
      for (const auto& y : b) sum += 1.0 - Cosine(*vec[x], *vec[y]);
    }
    return sum / (a.size() * b.size());
  };
  while (clusters.size() > k) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::string, std::string> best_key;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double d = linkage(clusters[i], clusters[j]);
        auto key = std::minmax(*clusters[i].begin(), *clusters[j].begin());
        std::pair<std::string, std::string> ordered{key.first, key.second};
        if (d < best || (d == best && ordered < best_key)) {
          best = d;
          best_key = ordered;
          bi = i;
          bj = j;
        }
      }
    }
    clusters[bi].insert(clusters[bj].begin(), clusters[bj].end());
    clusters.erase(clusters.begin() + static_cast<long>(bj));
  }
  std::vector<std::vector<std::string>> out;
  for (const auto& c : clusters) out.emplace_back(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace surveyor::oracle
