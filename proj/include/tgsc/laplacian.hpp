// Copyright 2026 The TGSC Authors.
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

#pragma once

#include <Eigen/SparseCore>

#include <cmath>
#include <span>
#include <vector>

#include "tgsc/graph.hpp"

namespace tgsc {

/// L = I - D^{-1/2} W D^{-1/2} on the positive-degree part of a node subset.
template <typename Scalar = double>
struct NormalizedLaplacian {
  using Matrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix matrix;
  std::vector<NodeId> nodes;      // local index -> original node id
  std::vector<NodeId> uncovered;  // requested nodes with zero degree, left out
  Vector sqrt_degree;             // D^{1/2} over `nodes`

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Laplacian of the submatrix of W on `subset` (sorted original ids).
/// Degrees are recomputed inside the subset.
template <typename Scalar = double, typename Weight>
NormalizedLaplacian<Scalar> normalized_laplacian(const WeightedGraph<Weight>& g,
                                                 std::span<const NodeId> subset) {
  using Index = typename NormalizedLaplacian<Scalar>::Matrix::StorageIndex;
  const int n = g.node_count();
  std::vector<int> local(n, -1);
  std::vector<char> in_subset(n, 0);
  for (NodeId v : subset) in_subset[v] = 1;

  std::vector<Scalar> degree(subset.size(), Scalar(0));
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (typename WeightedGraph<Weight>::Matrix::InnerIterator it(g.weights(), subset[i]); it; ++it) {
      if (in_subset[it.col()]) degree[i] += static_cast<Scalar>(it.value());
    }
  }
  NormalizedLaplacian<Scalar> lap;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (degree[i] > Scalar(0)) {
      local[subset[i]] = static_cast<int>(lap.nodes.size());
      lap.nodes.push_back(subset[i]);
    } else {
      lap.uncovered.push_back(subset[i]);
    }
  }
  const int m = lap.size();
  lap.sqrt_degree.resize(m);
  for (std::size_t i = 0, j = 0; i < subset.size(); ++i) {
    if (degree[i] > Scalar(0)) lap.sqrt_degree[j++] = std::sqrt(degree[i]);
  }
  std::vector<Eigen::Triplet<Scalar, Index>> t;
  t.reserve(static_cast<std::size_t>(g.weights().nonZeros()) + m);
  for (int i = 0; i < m; ++i) {
    t.emplace_back(i, i, Scalar(1));
    for (typename WeightedGraph<Weight>::Matrix::InnerIterator it(g.weights(), lap.nodes[i]); it; ++it) {
      const int j = local[it.col()];
      if (j < 0) continue;
      t.emplace_back(i, j, -static_cast<Scalar>(it.value()) / (lap.sqrt_degree[i] * lap.sqrt_degree[j]));
    }
  }
  lap.matrix.resize(m, m);
  lap.matrix.setFromTriplets(t.begin(), t.end());
  lap.matrix.makeCompressed();
  return lap;
}

template <typename Scalar = double, typename Weight>
NormalizedLaplacian<Scalar> normalized_laplacian(const WeightedGraph<Weight>& g) {
  std::vector<NodeId> all(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) all[i] = i;
  return normalized_laplacian<Scalar>(g, std::span<const NodeId>(all));
}

}  // namespace tgsc
