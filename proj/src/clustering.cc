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

#include "surveyor/clustering.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "surveyor/errors.h"

namespace surveyor::clustering {

using embedding::Cosine;
using embedding::EmbeddingVector;

namespace {

struct Working {
  std::vector<std::size_t> members;  // indices into the sorted input
  bool alive = true;
};

}  // namespace

std::vector<Cluster> Agglomerative(std::span<const LabeledVector> vectors,
                                   std::size_t k) {
  const std::size_t n = vectors.size();
  if (k < 1 || k > n) {
    throw InvalidArgument("agglomerative: k=" + std::to_string(k) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  // Work on a copy sorted by id so every index order below is id order.
  std::vector<std::size_t> by_id(n);
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) {
    return vectors[a].first < vectors[b].first;
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (vectors[by_id[i]].first == vectors[by_id[i - 1]].first) {
      throw InvalidArgument("agglomerative: duplicate id '" +
                            vectors[by_id[i]].first + "'");
    }
  }
  const auto& vec = [&](std::size_t i) -> const EmbeddingVector& {
    return vectors[by_id[i]].second;
  };

  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i * n + j] = dist[j * n + i] = 1.0 - Cosine(vec(i), vec(j));
    }
  }

  std::vector<Working> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i].members = {i};

  // Mean pairwise distance, summed in sorted member order.
  auto linkage = [&](const Working& a, const Working& b) {
    double sum = 0.0;
    for (std::size_t x : a.members) {
      for (std::size_t y : b.members) sum += dist[x * n + y];
    }
    return sum / static_cast<double>(a.members.size() * b.members.size());
  };

  // Cache of linkage values between live clusters; the lowest member of a
  // cluster never changes after a merge into the lower one.
  std::vector<double> link(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) link[i * n + j] = dist[i * n + j];
  }

  std::size_t alive = n;
  while (alive > k) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    // Slot index equals the lowest member index, so scanning i < j in
    // order realises the (lowest id, other lowest id) tie-break.
    for (std::size_t i = 0; i < n; ++i) {
      if (!clusters[i].alive) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!clusters[j].alive) continue;
        if (link[i * n + j] < best) {
          best = link[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    auto& keep = clusters[bi];
    auto& gone = clusters[bj];
    keep.members.insert(keep.members.end(), gone.members.begin(),
                        gone.members.end());
    std::sort(keep.members.begin(), keep.members.end());
    gone.alive = false;
    gone.members.clear();
    --alive;
    for (std::size_t o = 0; o < n; ++o) {
      if (o == bi || !clusters[o].alive) continue;
      const double v = linkage(keep, clusters[o]);
      link[std::min(o, bi) * n + std::max(o, bi)] = v;
    }
  }

  std::vector<Cluster> out;
  for (const auto& c : clusters) {
    if (!c.alive) continue;
    Cluster cluster;
    cluster.cluster_id = static_cast<int>(out.size());
    const std::size_t dim = vec(c.members.front()).dim();
    cluster.centroid.values.assign(dim, 0.0);
    for (std::size_t m : c.members) {
      cluster.members.push_back(vectors[by_id[m]].first);
      const auto& v = vec(m);
      for (std::size_t d = 0; d < dim && d < v.dim(); ++d) {
        cluster.centroid.values[d] += v.values[d];
      }
    }
    for (double& x : cluster.centroid.values) {
      x /= static_cast<double>(c.members.size());
    }
    cluster.centroid = embedding::Normalized(std::move(cluster.centroid));
    out.push_back(std::move(cluster));
  }
  return out;
}

int SectionAssignment::cluster_for(selection::Section section) const {
  for (const auto& [s, c] : section_to_cluster) {
    if (s == section) return c;
  }
  throw InvalidArgument("section not assigned");
}

std::vector<int> GreedyAssign(const std::vector<std::vector<double>>& sim) {
  const std::size_t sections = sim.size();
  if (sections == 0) return {};
  const std::size_t clusters = sim.front().size();
  if (clusters == 0) throw InvalidArgument("no clusters to assign");
  std::vector<int> out(sections, -1);
  std::vector<bool> used(clusters, false);
  std::size_t used_count = 0;
  for (std::size_t step = 0; step < sections; ++step) {
    const bool distinct = used_count < clusters;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bs = sections;
    std::size_t bc = clusters;
    for (std::size_t s = 0; s < sections; ++s) {
      if (out[s] >= 0) continue;
      for (std::size_t c = 0; c < clusters; ++c) {
        if (distinct && used[c]) continue;
        if (sim[s][c] > best || bs == sections) {
          best = sim[s][c];
          bs = s;
          bc = c;
        }
      }
    }
    out[bs] = static_cast<int>(bc);
    if (!used[bc]) {
      used[bc] = true;
      ++used_count;
    }
  }
  return out;
}

SectionAssignment AssignSections(std::span<const Cluster> clusters,
                                 std::span<const selection::Query> queries,
                                 embedding::Embedder& embedder) {
  if (clusters.empty()) throw InvalidArgument("no clusters to assign");
  std::vector<std::string> texts;
  for (const auto& q : queries) texts.push_back(q.text);
  const auto query_vectors = embedder.Embed(texts);

  std::vector<std::vector<double>> sim(queries.size(),
                                       std::vector<double>(clusters.size()));
  for (std::size_t s = 0; s < queries.size(); ++s) {
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      sim[s][c] = Cosine(query_vectors[s], clusters[c].centroid);
    }
  }
  const auto picks = GreedyAssign(sim);
  SectionAssignment out;
  std::set<int> used;
  for (std::size_t s = 0; s < queries.size(); ++s) {
    const auto section =
        queries[s].section.value_or(selection::Section::kIntroduction);
    const int id = clusters[static_cast<std::size_t>(picks[s])].cluster_id;
    out.section_to_cluster.emplace_back(section, id);
    used.insert(id);
  }
  for (const auto& c : clusters) {
    if (!used.contains(c.cluster_id)) out.unassigned.push_back(c.cluster_id);
  }
  return out;
}

std::size_t OverlapReport::count(const std::string& a,
                                 const std::string& b) const {
  auto it = pairs.find(a < b ? std::pair(a, b) : std::pair(b, a));
  if (it == pairs.end()) {
    throw InvalidArgument("no overlap entry for '" + a + "'/'" + b + "'");
  }
  return it->second;
}

std::size_t OverlapReport::min() const {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (const auto& [key, v] : pairs) m = std::min(m, v);
  return m == std::numeric_limits<std::size_t>::max() ? 0 : m;
}

std::size_t OverlapReport::max() const {
  std::size_t m = 0;
  for (const auto& [key, v] : pairs) m = std::max(m, v);
  return m;
}

double OverlapReport::mean() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [key, v] : pairs) {
    sum += static_cast<double>(v);
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

OverlapReport Overlap(
    const std::map<std::string, std::vector<std::string>>& lists,
    std::size_t k) {
  if (k < 1) throw InvalidArgument("overlap: k must be >= 1");
  std::map<std::string, std::set<std::string>> heads;
  for (const auto& [name, ids] : lists) {
    std::set<std::string> all;
    for (const auto& id : ids) {
      if (!all.insert(id).second) {
        throw InvalidArgument("overlap: duplicate '" + id + "' in list '" +
                              name + "'");
      }
    }
    heads[name] = std::set<std::string>(
        ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(
                                       std::min(k, ids.size())));
  }
  OverlapReport report;
  report.k = k;
  for (auto a = heads.begin(); a != heads.end(); ++a) {
    for (auto b = std::next(a); b != heads.end(); ++b) {
      std::size_t shared = 0;
      for (const auto& id : a->second) shared += b->second.count(id);
      report.pairs[{a->first, b->first}] = shared;
    }
  }
  return report;
}

std::string ClusterListingJsonl(std::span<const Cluster> clusters,
                                const SectionAssignment* assignment) {
  std::string out;
  for (const auto& c : clusters) {
    nlohmann::json sections = nlohmann::json::array();
    if (assignment != nullptr) {
      for (const auto& [section, id] : assignment->section_to_cluster) {
        if (id == c.cluster_id) sections.push_back(selection::SectionName(section));
      }
    }
    nlohmann::json line = {{"cluster_id", c.cluster_id},
                           {"members", c.members},
                           {"section", sections.empty() ? nlohmann::json()
                                                        : sections.front()},
                           {"sections", sections}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace surveyor::clustering
