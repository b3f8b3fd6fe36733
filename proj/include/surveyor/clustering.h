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

#ifndef SURVEYOR_CLUSTERING_H_
#define SURVEYOR_CLUSTERING_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surveyor/embedding.h"
#include "surveyor/selection.h"

namespace surveyor::clustering {

struct Cluster {
  int cluster_id = 0;
  std::vector<std::string> members;  // sorted ascending
  embedding::EmbeddingVector centroid;

  bool operator==(const Cluster&) const = default;
};

using LabeledVector = std::pair<std::string, embedding::EmbeddingVector>;

// Bottom-up average-linkage clustering under cosine distance (1 - cos).
// Starting from singletons, repeatedly merges the pair with the smallest
// mean pairwise distance until k clusters remain. Ties go to the pair
// whose smaller lowest-member id is smallest, then the other lowest-member
// id. Cluster ids are assigned 0..k-1 by lowest member id, so the result
// does not depend on input order. Throws InvalidArgument unless
// 1 <= k <= n and ids are unique.
std::vector<Cluster> Agglomerative(std::span<const LabeledVector> vectors,
                                   std::size_t k);

struct SectionAssignment {
  // In template order.
  std::vector<std::pair<selection::Section, int>> section_to_cluster;
  std::vector<int> unassigned;  // cluster ids no section uses

  int cluster_for(selection::Section section) const;
};

// Greedy matching on a sections x clusters similarity matrix: repeatedly
// pick the largest entry among unassigned sections and unused clusters
// (ties to the lower section index, then lower cluster index). Once every
// cluster is used, remaining sections pick among all clusters.
std::vector<int> GreedyAssign(const std::vector<std::vector<double>>& sim);

// Assigns each section query to a cluster by centroid similarity.
SectionAssignment AssignSections(std::span<const Cluster> clusters,
                                 std::span<const selection::Query> queries,
                                 embedding::Embedder& embedder);

struct OverlapReport {
  std::size_t k = 0;
  // Keyed by (a, b) with a < b.
  std::map<std::pair<std::string, std::string>, std::size_t> pairs;

  // Symmetric lookup.
  std::size_t count(const std::string& a, const std::string& b) const;
  std::size_t min() const;
  std::size_t max() const;
  double mean() const;
};

// Pairwise intersection sizes of the first min(k, len) entries of each
// list. Throws InvalidArgument on duplicate ids within a list.
OverlapReport Overlap(const std::map<std::string, std::vector<std::string>>& lists,
                      std::size_t k);

// One JSON object per line: {"cluster_id", "members", "section"}; section
// is the first section assigned to the cluster, or null.
std::string ClusterListingJsonl(std::span<const Cluster> clusters,
                                const SectionAssignment* assignment);

}  // namespace surveyor::clustering

#endif  // SURVEYOR_CLUSTERING_H_
