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

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tgsc/eigensolver.hpp"
#include "tgsc/graph.hpp"
#include "tgsc/graphlet.hpp"
#include "tgsc/laplacian.hpp"
#include "tgsc/motif_matrix.hpp"

namespace tgsc {

/// Which vector the sweep sorts: the Laplacian eigenvector itself, or the
/// degree-rescaled D^{-1/2} v used in classical Cheeger sweep proofs.
enum class SweepVector { kEigenvector, kDegreeScaled };

struct SpectralOptions {
  EigenOptions eigen;
  SweepVector sweep_vector = SweepVector::kEigenvector;
  /// Embeddings: skip the eigenvector of the smallest eigenvalue.
  bool drop_trivial = false;
};

struct SweepResult {
  std::vector<NodeId> order;    // sweep order over the component (original ids)
  std::vector<double> profile;  // profile[k-1] = phi(S_k), k = 1..n-1
  int best_k = 0;
  double best_conductance = std::numeric_limits<double>::infinity();
  std::vector<NodeId> cluster;  // smaller side of the best cut by node count, sorted
};

/// Sweep over `component` (original ids, at least two) ordered by `key`
/// ascending, ties by node id. Complements are taken in the whole graph and
/// the profile is accumulated in one pass over the edge weights.
template <typename Weight, typename Derived>
SweepResult sweep_cut(const WeightedGraph<Weight>& g, std::span<const NodeId> component,
                      const Eigen::MatrixBase<Derived>& key) {
  const int nc = static_cast<int>(component.size());
  if (nc < 2) throw Error(ErrorCode::kInvalidArgument, "sweep: component has fewer than two nodes");
  if (key.size() != nc) throw Error(ErrorCode::kInvalidArgument, "sweep: vector length does not match component");
  std::vector<int> idx(nc);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return component[a] < component[b];
  });
  SweepResult r;
  r.order.reserve(nc);
  for (int i : idx) r.order.push_back(component[i]);

  const Weight total = g.total_volume();
  std::vector<char> in_prefix(g.node_count(), 0);
  Weight vol(0), cut(0);
  r.profile.reserve(nc - 1);
  for (int k = 1; k < nc; ++k) {
    const NodeId v = r.order[k - 1];
    for (typename WeightedGraph<Weight>::Matrix::InnerIterator it(g.weights(), v); it; ++it) {
      if (in_prefix[it.col()]) {
        cut -= it.value();
      } else {
        cut += it.value();
      }
    }
    in_prefix[v] = 1;
    vol += g.degree(v);
    const Weight denom = std::min(vol, total - vol);
    const double phi = denom > Weight(0) ? static_cast<double>(cut) / static_cast<double>(denom)
                                         : std::numeric_limits<double>::infinity();
    r.profile.push_back(phi);
    if (phi < r.best_conductance) {
      r.best_conductance = phi;
      r.best_k = k;
    }
  }
  std::vector<NodeId> s(r.order.begin(), r.order.begin() + r.best_k);
  std::sort(s.begin(), s.end());
  if (2 * static_cast<int>(s.size()) < g.node_count()) {
    r.cluster = std::move(s);
  } else {
    NodeSet in(g.node_count(), s);
    r.cluster = in.complement().members();
  }
  return r;
}

struct ClusterResult {
  std::vector<NodeId> cluster;        // sorted original ids
  int component = -1;                 // label of the winning component in G^H
  int components = 0;                 // components of G^H with at least two nodes
  int best_k = 0;                     // prefix length (the component size for a whole-component cut)
  double phi_weighted = 0.0;          // conductance in G^H used for selection
  double alpha_typed = 0.0;           // typed-graphlet conductance of `cluster` in G
  double lambda2 = 0.0;               // second eigenvalue of L over all covered nodes
  double component_lambda2 = 0.0;     // second eigenvalue of the winning component
  double beta = 0.0;                  // sqrt(8 / lambda2) * |E(H)|
  SweepResult sweep;                  // sweep of the winning component
  std::vector<NodeId> uncovered;      // nodes in no instance
};

/// Typed-graphlet spectral clustering. Every component of G^H is swept; when
/// G^H has several components a whole component is itself a zero-conductance
/// cut and wins.
ClusterResult cluster(const MotifMatrix& mm, const SpectralOptions& opt = {});
ClusterResult cluster(const HeteroGraph& g, const TypedGraphletSignature& sig, const SpectralOptions& opt = {});

struct Partition {
  std::vector<std::vector<NodeId>> parts;  // sorted ids, disjoint, covering the covered nodes
  bool early_stop = false;                 // fewer parts than requested
};

/// Splits the largest part with cluster() until `target_k` parts exist. A
/// split that leaves either side without an instance is rejected and stops
/// the recursion.
Partition recursive_bipartition(const HeteroGraph& g, const TypedGraphletSignature& sig, int target_k,
                                const SpectralOptions& opt = {});

struct Ordering {
  std::vector<NodeId> order;  // a permutation of all node ids
  bool graphlet_absent = false;
};

/// Components of G^H in descending size, each sorted by its second
/// eigenvector; uncovered nodes last in original order.
Ordering spectral_ordering(const MotifMatrix& mm, const SpectralOptions& opt = {});
Ordering spectral_ordering(const HeteroGraph& g, const TypedGraphletSignature& sig, const SpectralOptions& opt = {});

struct Embedding {
  Eigen::MatrixXd z;  // N x D, unit rows for covered nodes, zero rows otherwise
  std::vector<NodeId> uncovered;
};

/// Per component of G^H: the `dim` smallest eigenvectors as columns, then
/// each row scaled to unit length. Components smaller than `dim` are
/// zero-padded.
Embedding spectral_embedding(const MotifMatrix& mm, int dim, const SpectralOptions& opt = {});
Embedding spectral_embedding(const HeteroGraph& g, const TypedGraphletSignature& sig, int dim,
                             const SpectralOptions& opt = {});

/// Writes `N D` then one row per node, 17 significant digits.
void write_embedding(std::ostream& out, const Embedding& e);

struct RankedGraphlet {
  TypedGraphletSignature signature;
  double lambda2 = 0.0;
  int edge_count = 0;
  double beta = 0.0;
  std::int64_t instances = 0;
};

struct GraphletRanking {
  std::vector<RankedGraphlet> ranked;              // ascending beta
  std::vector<TypedGraphletSignature> absent;      // excluded: no instances
};

/// beta = sqrt(8 / lambda2) * |E(H)| on the largest component of each G^H.
double approximation_factor(double lambda2, int edge_count);

GraphletRanking rank_typed_graphlets(const HeteroGraph& g, std::span<const TypedGraphletSignature> sigs,
                                     const SpectralOptions& opt = {});

/// Every typed signature occurring in g for the given skeletons.
std::vector<TypedGraphletSignature> occurring_signatures(const HeteroGraph& g, std::span<const Skeleton> skeletons,
                                                         TypeGrouping grouping = TypeGrouping::kMultiset);

}  // namespace tgsc
