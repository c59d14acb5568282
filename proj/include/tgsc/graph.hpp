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

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tgsc/error.hpp"

namespace tgsc {

using NodeId = int;
using TypeId = int;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph with a node-type and an edge-type mapping.
///
/// Edges are stored canonically (u < v) in lexicographic order, so an edge
/// index is its rank in that order. Adjacency lists are sorted.
class HeteroGraph {
 public:
  HeteroGraph() = default;

  /// Validates and canonicalizes. Throws Error(kInvalidArgument) on
  /// self-loops, duplicate edges, out-of-range ids or types.
  HeteroGraph(int node_count, std::vector<Edge> edges,
              std::vector<TypeId> node_types, std::vector<TypeId> edge_types,
              std::vector<std::string> node_type_names,
              std::vector<std::string> edge_type_names,
              std::vector<std::string> external_ids = {});

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }

  TypeId node_type(NodeId v) const { return node_types_[v]; }
  TypeId edge_type(int edge_index) const { return edge_types_[edge_index]; }
  std::span<const TypeId> node_types() const { return node_types_; }
  std::span<const TypeId> edge_types() const { return edge_types_; }

  int node_type_count() const { return static_cast<int>(node_type_names_.size()); }
  int edge_type_count() const { return static_cast<int>(edge_type_names_.size()); }
  const std::vector<std::string>& node_type_names() const { return node_type_names_; }
  const std::vector<std::string>& edge_type_names() const { return edge_type_names_; }
  const std::string& external_id(NodeId v) const { return external_ids_[v]; }
  const std::vector<std::string>& external_ids() const { return external_ids_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  int degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;
  /// Index of edge {u,v}, or -1 when absent.
  int edge_index(NodeId u, NodeId v) const;

  TypeId find_node_type(std::string_view name) const;
  TypeId find_edge_type(std::string_view name) const;

  friend bool operator==(const HeteroGraph& a, const HeteroGraph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_ &&
           a.node_types_ == b.node_types_ && a.edge_types_ == b.edge_types_ &&
           a.node_type_names_ == b.node_type_names_ &&
           a.edge_type_names_ == b.edge_type_names_;
  }

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<TypeId> node_types_;
  std::vector<TypeId> edge_types_;
  std::vector<std::string> node_type_names_;
  std::vector<std::string> edge_type_names_;
  std::vector<std::string> external_ids_;
  std::vector<int> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<int> adjacency_edge_;  // edge index per adjacency slot
};

/// Membership over the node ids of one graph.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int node_count) : member_(node_count, 0) {}
  NodeSet(int node_count, std::span<const NodeId> members);
  NodeSet(int node_count, std::initializer_list<NodeId> members)
      : NodeSet(node_count, std::span<const NodeId>(members.begin(), members.size())) {}

  static NodeSet from_mask(int node_count, std::uint64_t mask);

  int node_count() const { return static_cast<int>(member_.size()); }
  bool contains(NodeId v) const { return member_[v] != 0; }
  void insert(NodeId v) { member_[v] = 1; }
  void erase(NodeId v) { member_[v] = 0; }
  int size() const;
  bool empty() const { return size() == 0; }
  NodeSet complement() const;
  std::vector<NodeId> members() const;
  /// A cut (S, S-bar) needs both sides nonempty.
  bool is_proper_cut() const {
    const int s = size();
    return s > 0 && s < node_count();
  }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<char> member_;
};

/// Symmetric nonnegative weighted graph with zero diagonal. Zero weights are
/// not stored, so the sparsity pattern is exactly the positive support.
template <typename Scalar>
class WeightedGraph {
 public:
  using Matrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor, int>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  WeightedGraph() = default;

  /// Builds from one entry per undirected pair (either orientation).
  WeightedGraph(int node_count, std::span<const Eigen::Triplet<Scalar>> pairs)
      : weights_(node_count, node_count), degrees_(Vector::Zero(node_count)) {
    std::vector<Eigen::Triplet<Scalar>> both;
    both.reserve(pairs.size() * 2);
    for (const auto& t : pairs) {
      if (t.row() == t.col()) {
        throw Error(ErrorCode::kInvalidArgument, "weighted graph: self-loop weight");
      }
      if (t.value() < Scalar(0)) {
        throw Error(ErrorCode::kInvalidArgument, "weighted graph: negative weight");
      }
      if (t.value() == Scalar(0)) continue;
      both.emplace_back(t.row(), t.col(), t.value());
      both.emplace_back(t.col(), t.row(), t.value());
    }
    weights_.setFromTriplets(both.begin(), both.end());
    weights_.makeCompressed();
    for (int i = 0; i < node_count; ++i) {
      Scalar d(0);
      for (typename Matrix::InnerIterator it(weights_, i); it; ++it) d += it.value();
      degrees_[i] = d;
    }
  }

  /// Takes an already symmetric matrix.
  explicit WeightedGraph(Matrix symmetric) : weights_(std::move(symmetric)) {
    weights_.prune(Scalar(0));
    weights_.makeCompressed();
    degrees_ = Vector::Zero(weights_.rows());
    for (int i = 0; i < weights_.outerSize(); ++i) {
      for (typename Matrix::InnerIterator it(weights_, i); it; ++it) degrees_[i] += it.value();
    }
  }

  int node_count() const { return static_cast<int>(weights_.rows()); }
  const Matrix& weights() const { return weights_; }
  const Vector& degrees() const { return degrees_; }
  Scalar degree(NodeId v) const { return degrees_[v]; }
  Scalar weight(NodeId i, NodeId j) const { return weights_.coeff(i, j); }
  Scalar total_volume() const { return degrees_.sum(); }

 private:
  Matrix weights_;
  Vector degrees_;
};

struct Components {
  std::vector<int> label;  // node -> component id
  int count = 0;
  std::vector<std::vector<NodeId>> members;  // sorted node ids per component
};

/// Labels follow the smallest contained node id; isolated nodes are singletons.
template <typename Scalar>
Components connected_components(const WeightedGraph<Scalar>& g) {
  const int n = g.node_count();
  Components c;
  c.label.assign(n, -1);
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (c.label[root] >= 0) continue;
    const int id = c.count++;
    c.members.emplace_back();
    c.label[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      c.members[id].push_back(v);
      for (typename WeightedGraph<Scalar>::Matrix::InnerIterator it(g.weights(), v); it; ++it) {
        const NodeId w = static_cast<NodeId>(it.col());
        if (it.value() > Scalar(0) && c.label[w] < 0) {
          c.label[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(c.members[id].begin(), c.members[id].end());
  }
  return c;
}

template <typename Scalar>
Scalar weighted_volume(const WeightedGraph<Scalar>& g, const NodeSet& s) {
  Scalar vol(0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (s.contains(v)) vol += g.degree(v);
  }
  return vol;
}

template <typename Scalar>
Scalar weighted_cut(const WeightedGraph<Scalar>& g, const NodeSet& s) {
  Scalar cut(0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!s.contains(v)) continue;
    for (typename WeightedGraph<Scalar>::Matrix::InnerIterator it(g.weights(), v); it; ++it) {
      if (!s.contains(static_cast<NodeId>(it.col()))) cut += it.value();
    }
  }
  return cut;
}

/// cut(S, S-bar) / min(vol S, vol S-bar).
template <typename Scalar>
double weighted_conductance(const WeightedGraph<Scalar>& g, const NodeSet& s) {
  if (s.node_count() != g.node_count() || !s.is_proper_cut()) {
    throw Error(ErrorCode::kDegenerateCut, "conductance: cut has an empty side");
  }
  const Scalar vol_s = weighted_volume(g, s);
  const Scalar vol_rest = g.total_volume() - vol_s;
  const Scalar denom = std::min(vol_s, vol_rest);
  if (!(denom > Scalar(0))) {
    throw Error(ErrorCode::kUndefinedMeasure,
                "conductance: one side of the cut has zero volume (all isolated)");
  }
  return static_cast<double>(weighted_cut(g, s)) / static_cast<double>(denom);
}

struct CutOptimum {
  NodeSet set;
  double value = std::numeric_limits<double>::infinity();
};

/// Exhaustive minimum weighted conductance over all cuts with positive
/// volume on both sides. Exponential; guarded to 20 nodes.
CutOptimum brute_force_min_weighted_conductance(const WeightedGraph<std::int64_t>& g);

/// Plain unweighted view of a heterogeneous graph (unit weights).
WeightedGraph<std::int64_t> unit_weighted(const HeteroGraph& g);

/// Relabels so that order[i] becomes node i. Types and external ids follow.
HeteroGraph permute(const HeteroGraph& g, std::span<const NodeId> order);

/// inverse[order[i]] = i. Throws if order is not a bijection.
std::vector<NodeId> inverse_permutation(std::span<const NodeId> order);

/// Subgraph induced on `nodes` (sorted, distinct). Node i of the result is
/// nodes[i]; all type tables are kept so type ids stay comparable.
HeteroGraph induced_subgraph(const HeteroGraph& g, std::span<const NodeId> nodes);

/// Removes the listed edge indices, keeping every node.
HeteroGraph remove_edges(const HeteroGraph& g, std::span<const int> edge_indices);

/// Same structure with one node type and one edge type, both named "_".
HeteroGraph strip_types(const HeteroGraph& g);

struct LoadStats {
  int collapsed_duplicates = 0;  // (u,v)/(v,u) repeats merged on load
  int comment_lines = 0;
};

/// Parses the typed edge-list format:
///   src dst src_type dst_type [edge_type]
/// '#' starts a comment line; '%node id type' declares a node (e.g. an
/// isolated one); optional '%node-types A B ..' and '%edge-types e f ..'
/// restrict the type vocabulary. Type ids are assigned in sorted name order.
HeteroGraph parse_typed_edge_list(std::string_view text, LoadStats* stats = nullptr);
HeteroGraph load_typed_edge_list(std::istream& in, LoadStats* stats = nullptr);
HeteroGraph load_typed_edge_list_file(const std::string& path, LoadStats* stats = nullptr);

/// Writes a graph in the same format; isolated nodes become %node lines.
void write_typed_edge_list(std::ostream& out, const HeteroGraph& g);

}  // namespace tgsc
