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
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tgsc/graph.hpp"

namespace tgsc {

/// Connected graphlet shapes. kEdge is the 2-node graphlet used for the
/// classical (edge-based) reduction; the remaining eight are the 3- and
/// 4-node catalog.
enum class Skeleton : std::uint8_t {
  kEdge,
  kWedge,
  kTriangle,
  kFourPath,
  kFourStar,
  kFourCycle,
  kTailedTriangle,
  kDiamond,
  kFourClique,
};

struct SkeletonInfo {
  Skeleton skeleton;
  std::string_view name;
  int node_count;
  /// Canonical edges over positions 0..k-1. Positions matter for strict typing.
  std::vector<std::pair<int, int>> edges;
  int automorphisms;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

const SkeletonInfo& skeleton_info(Skeleton s);
std::string_view to_string(Skeleton s);
std::optional<Skeleton> parse_skeleton(std::string_view name);

/// The eight 3- and 4-node skeletons, in catalog order.
std::span<const Skeleton> catalog_skeletons();

/// How instance type data is grouped into one typed graphlet.
enum class TypeGrouping : std::uint8_t {
  kMultiset,  // sorted node-type and edge-type multisets (default)
  kSet,       // distinct type sets only
  kStrict,    // positional typing, canonical up to skeleton automorphism
};

std::string_view to_string(TypeGrouping g);

struct TypedGraphletSignature {
  Skeleton skeleton = Skeleton::kEdge;
  TypeGrouping grouping = TypeGrouping::kMultiset;
  std::vector<TypeId> node_types;
  std::vector<TypeId> edge_types;

  int edge_count() const { return skeleton_info(skeleton).edge_count(); }

  friend bool operator==(const TypedGraphletSignature&, const TypedGraphletSignature&) = default;
  friend auto operator<=>(const TypedGraphletSignature&, const TypedGraphletSignature&) = default;
};

/// Renders `skel[A,B,..]`, or `skel[A,B,..|e,f,..]` when the graph has more
/// than one edge type.
std::string render(const HeteroGraph& g, const TypedGraphletSignature& sig);

/// Parses `skel:A,B,..[|e,f,..]` against the graph's type labels. Edge types
/// may be omitted when the graph has a single edge type.
TypedGraphletSignature parse_signature(const HeteroGraph& g, std::string_view text,
                                       TypeGrouping grouping = TypeGrouping::kMultiset);

/// An induced occurrence; nodes sorted ascending, first `size` entries used.
struct GraphletInstance {
  Skeleton skeleton = Skeleton::kEdge;
  std::array<NodeId, 4> node{};
  int size = 0;

  std::span<const NodeId> nodes() const { return {node.data(), static_cast<std::size_t>(size)}; }

  friend bool operator==(const GraphletInstance& a, const GraphletInstance& b) {
    return a.skeleton == b.skeleton && std::ranges::equal(a.nodes(), b.nodes());
  }
  friend bool operator<(const GraphletInstance& a, const GraphletInstance& b) {
    return std::ranges::lexicographical_compare(a.nodes(), b.nodes());
  }
};

/// Skeleton of the subgraph induced on `nodes` (2..4 nodes), or nullopt if
/// it is disconnected.
std::optional<Skeleton> classify_induced(const HeteroGraph& g, std::span<const NodeId> nodes);

/// Graph edges among the instance nodes, as (u, v, edge index) with u < v.
std::vector<std::array<int, 3>> instance_edges(const HeteroGraph& g, const GraphletInstance& inst);

TypedGraphletSignature signature_of(const HeteroGraph& g, const GraphletInstance& inst,
                                    TypeGrouping grouping = TypeGrouping::kMultiset);

/// Visits every induced occurrence of `skel` exactly once (unspecified order).
/// Each connected induced k-set is grown from its lexicographically smallest
/// edge, which is the only edge allowed to emit it.
void for_each_instance(const HeteroGraph& g, Skeleton skel,
                       const std::function<void(const GraphletInstance&)>& visit);

/// All occurrences of `skel`, sorted lexicographically by node ids.
std::vector<GraphletInstance> enumerate_instances(const HeteroGraph& g, Skeleton skel);

/// Occurrences whose typed signature equals `sig`, sorted.
std::vector<GraphletInstance> enumerate_typed_instances(const HeteroGraph& g,
                                                        const TypedGraphletSignature& sig);

/// Exhaustive k-subset oracle with a permutation isomorphism test.
/// Guarded to 64 nodes.
std::vector<GraphletInstance> brute_force_instances(const HeteroGraph& g, Skeleton skel);

using Census = std::map<TypedGraphletSignature, std::int64_t>;

Census census(const HeteroGraph& g, std::span<const Skeleton> skeletons,
              TypeGrouping grouping = TypeGrouping::kMultiset);

/// Entry (i,j) counts instances of `sig` having {i,j} as an edge.
Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor, int> per_edge_instance_counts(
    const HeteroGraph& g, const TypedGraphletSignature& sig);

}  // namespace tgsc
