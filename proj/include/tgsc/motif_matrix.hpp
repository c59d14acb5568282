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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tgsc/graph.hpp"
#include "tgsc/graphlet.hpp"
#include "tgsc/laplacian.hpp"

namespace tgsc {

/// Typed-graphlet adjacency W (per-edge instance counts), its degree vector
/// and the induced weighted graph, plus the instance list that produced it.
/// All quantities are exact integers.
class MotifMatrix {
 public:
  using Matrix = WeightedGraph<std::int64_t>::Matrix;
  using Vector = WeightedGraph<std::int64_t>::Vector;

  MotifMatrix(const HeteroGraph& g, TypedGraphletSignature sig);

  const TypedGraphletSignature& signature() const { return signature_; }
  int node_count() const { return graph_.node_count(); }
  /// |E(H)|
  int graphlet_edge_count() const { return signature_.edge_count(); }

  /// G^H
  const WeightedGraph<std::int64_t>& graph() const { return graph_; }
  const Matrix& weights() const { return graph_.weights(); }
  const Vector& degrees() const { return graph_.degrees(); }

  std::span<const GraphletInstance> instances() const { return instances_; }
  std::int64_t instance_count() const { return static_cast<std::int64_t>(instances_.size()); }

  /// Sum over instances of incident instance edges; tallied per instance,
  /// independently of W.
  std::int64_t instance_degree(NodeId v) const { return instance_degree_[v]; }
  /// Number of instances containing v.
  std::int64_t instance_membership(NodeId v) const { return membership_[v]; }

  /// Nodes with positive typed degree, ascending.
  std::vector<NodeId> covered_nodes() const;

 private:
  TypedGraphletSignature signature_;
  std::vector<GraphletInstance> instances_;
  WeightedGraph<std::int64_t> graph_;
  std::vector<std::int64_t> instance_degree_;
  std::vector<std::int64_t> membership_;
};

inline MotifMatrix build_motif_matrix(const HeteroGraph& g, const TypedGraphletSignature& sig) {
  return MotifMatrix(g, sig);
}

std::int64_t typed_degree(const MotifMatrix& mm, NodeId v);
std::int64_t typed_volume(const MotifMatrix& mm, const NodeSet& s);

/// Instances with nodes on both sides of the cut.
std::int64_t typed_cut(const MotifMatrix& mm, const NodeSet& s);
std::int64_t typed_cut(const HeteroGraph& g, const TypedGraphletSignature& sig, const NodeSet& s);

/// typed_cut / min(typed volumes). Throws kDegenerateCut for an empty side
/// and kUndefinedMeasure when one side has zero typed volume.
double typed_conductance(const MotifMatrix& mm, const NodeSet& s);
double typed_conductance(const HeteroGraph& g, const TypedGraphletSignature& sig, const NodeSet& s);

/// Exact minimum typed-graphlet conductance over all cuts whose typed
/// volumes are both positive (cuts with an empty-volume side are skipped).
/// The returned set is the smaller side; ties go to the smaller side size,
/// then to lexicographic membership. Guarded to 20 nodes.
CutOptimum brute_force_min_conductance(const MotifMatrix& mm);
CutOptimum brute_force_min_conductance(const HeteroGraph& g, const TypedGraphletSignature& sig);

/// Node-count balanced alternative: typed_cut / min(|S|_H, |S-bar|_H), where
/// |S|_H counts (instance, member node in S) incidences. For comparison only.
double edge_expansion_measure(const MotifMatrix& mm, const NodeSet& s);

/// Laplacian of G^H over covered nodes. Throws kGraphletAbsent when W = 0.
NormalizedLaplacian<double> normalized_laplacian(const MotifMatrix& mm);

/// `i j w` lines after a `dimension nnz` header, upper triangle, row-major.
void write_matrix(std::ostream& out, const MotifMatrix& mm);

}  // namespace tgsc
