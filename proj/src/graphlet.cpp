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

#include "tgsc/graphlet.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tgsc {

namespace {

int count_automorphisms(int k, const std::vector<std::pair<int, int>>& edges) {
  std::array<std::array<bool, 4>, 4> adj{};
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = true;
  std::array<int, 4> p{0, 1, 2, 3};
  int count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      for (int j = 0; j < k && ok; ++j) ok = adj[i][j] == adj[p[i]][p[j]];
    }
    if (ok) ++count;
  } while (std::next_permutation(p.begin(), p.begin() + k));
  return count;
}

std::vector<SkeletonInfo> make_catalog() {
  std::vector<SkeletonInfo> c = {
      {Skeleton::kEdge, "edge", 2, {{0, 1}}, 0},
      {Skeleton::kWedge, "wedge", 3, {{0, 1}, {0, 2}}, 0},
      {Skeleton::kTriangle, "triangle", 3, {{0, 1}, {0, 2}, {1, 2}}, 0},
      {Skeleton::kFourPath, "4-path", 4, {{0, 1}, {1, 2}, {2, 3}}, 0},
      {Skeleton::kFourStar, "4-star", 4, {{0, 1}, {0, 2}, {0, 3}}, 0},
      {Skeleton::kFourCycle, "4-cycle", 4, {{0, 1}, {0, 3}, {1, 2}, {2, 3}}, 0},
      {Skeleton::kTailedTriangle, "tailed-triangle", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}, 0},
      {Skeleton::kDiamond, "diamond", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}, 0},
      {Skeleton::kFourClique, "4-clique", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 0},
  };
  for (auto& s : c) s.automorphisms = count_automorphisms(s.node_count, s.edges);
  return c;
}

const std::vector<SkeletonInfo>& catalog() {
  static const std::vector<SkeletonInfo> c = make_catalog();
  return c;
}

constexpr std::array<Skeleton, 8> kCatalogSkeletons = {
    Skeleton::kWedge,     Skeleton::kTriangle,       Skeleton::kFourPath, Skeleton::kFourStar,
    Skeleton::kFourCycle, Skeleton::kTailedTriangle, Skeleton::kDiamond,  Skeleton::kFourClique,
};

// Induced adjacency among up to four nodes as a 4x4 bit matrix.
struct LocalAdjacency {
  std::array<std::array<bool, 4>, 4> adj{};
  int edges = 0;
  std::array<int, 4> degree{};
};

LocalAdjacency local_adjacency(const HeteroGraph& g, std::span<const NodeId> nodes) {
  LocalAdjacency la;
  const int k = static_cast<int>(nodes.size());
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (g.has_edge(nodes[i], nodes[j])) {
        la.adj[i][j] = la.adj[j][i] = true;
        ++la.edges;
        ++la.degree[i];
        ++la.degree[j];
      }
    }
  }
  return la;
}

std::optional<Skeleton> classify(const LocalAdjacency& la, int k) {
  const int max_deg = *std::max_element(la.degree.begin(), la.degree.begin() + k);
  const int min_deg = *std::min_element(la.degree.begin(), la.degree.begin() + k);
  if (min_deg == 0) return std::nullopt;
  switch (k) {
    case 2:
      return Skeleton::kEdge;
    case 3:
      return la.edges == 3 ? Skeleton::kTriangle : Skeleton::kWedge;
    case 4:
      switch (la.edges) {
        case 3:
          if (max_deg == 3) return Skeleton::kFourStar;
          return Skeleton::kFourPath;
        case 4:
          return max_deg == 3 ? Skeleton::kTailedTriangle : Skeleton::kFourCycle;
        case 5:
          return Skeleton::kDiamond;
        case 6:
          return Skeleton::kFourClique;
        default:
          return std::nullopt;  // 2 edges on 4 nodes is a perfect matching
      }
    default:
      return std::nullopt;
  }
}

GraphletInstance make_instance(Skeleton s, std::span<const NodeId> sorted_nodes) {
  GraphletInstance inst;
  inst.skeleton = s;
  inst.size = static_cast<int>(sorted_nodes.size());
  std::copy(sorted_nodes.begin(), sorted_nodes.end(), inst.node.begin());
  return inst;
}

// Sorted union of two sorted lists, excluding `skip_a` and `skip_b`.
void sorted_union(std::span<const NodeId> a, std::span<const NodeId> b, NodeId skip_a, NodeId skip_b,
                  std::vector<NodeId>& out) {
  out.clear();
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  std::erase_if(out, [&](NodeId x) { return x == skip_a || x == skip_b; });
}

// Smallest induced edge of a sorted node set, as a lexicographic pair.
std::pair<NodeId, NodeId> smallest_edge(const LocalAdjacency& la, std::span<const NodeId> sorted_nodes) {
  const int k = static_cast<int>(sorted_nodes.size());
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (la.adj[i][j]) return {sorted_nodes[i], sorted_nodes[j]};
    }
  }
  return {-1, -1};
}

}  // namespace

const SkeletonInfo& skeleton_info(Skeleton s) { return catalog()[static_cast<std::size_t>(s)]; }

std::string_view to_string(Skeleton s) { return skeleton_info(s).name; }

std::optional<Skeleton> parse_skeleton(std::string_view name) {
  for (const auto& info : catalog()) {
    if (info.name == name) return info.skeleton;
  }
  // Common aliases.
  if (name == "3-path" || name == "path3") return Skeleton::kWedge;
  if (name == "chordal-cycle") return Skeleton::kDiamond;
  if (name == "4-path" || name == "path4") return Skeleton::kFourPath;
  return std::nullopt;
}

std::span<const Skeleton> catalog_skeletons() { return kCatalogSkeletons; }

std::string_view to_string(TypeGrouping g) {
  switch (g) {
    case TypeGrouping::kMultiset:
      return "multiset";
    case TypeGrouping::kSet:
      return "set";
    case TypeGrouping::kStrict:
      return "strict";
  }
  return "?";
}

std::string render(const HeteroGraph& g, const TypedGraphletSignature& sig) {
  std::ostringstream os;
  os << to_string(sig.skeleton) << '[';
  for (std::size_t i = 0; i < sig.node_types.size(); ++i) {
    if (i) os << ',';
    os << g.node_type_names()[sig.node_types[i]];
  }
  if (g.edge_type_count() > 1) {
    os << '|';
    for (std::size_t i = 0; i < sig.edge_types.size(); ++i) {
      if (i) os << ',';
      os << g.edge_type_names()[sig.edge_types[i]];
    }
  }
  os << ']';
  return os.str();
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

// Lexicographically smallest (node types, edge types) over all position maps
// that carry the skeleton onto the given typed layout.
std::pair<std::vector<TypeId>, std::vector<TypeId>> canonical_positional(
    const SkeletonInfo& info, const LocalAdjacency& la, std::span<const TypeId> node_types,
    const std::array<std::array<TypeId, 4>, 4>& edge_type) {
  const int k = info.node_count;
  std::array<std::array<bool, 4>, 4> sk{};
  for (auto [a, b] : info.edges) sk[a][b] = sk[b][a] = true;
  std::array<int, 4> p{0, 1, 2, 3};
  std::optional<std::pair<std::vector<TypeId>, std::vector<TypeId>>> best;
  do {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      for (int j = 0; j < k && ok; ++j) ok = (i == j) || sk[i][j] == la.adj[p[i]][p[j]];
    }
    if (!ok) continue;
    std::pair<std::vector<TypeId>, std::vector<TypeId>> cand;
    for (int i = 0; i < k; ++i) cand.first.push_back(node_types[p[i]]);
    for (auto [a, b] : info.edges) cand.second.push_back(edge_type[p[a]][p[b]]);
    if (!best || cand < *best) best = std::move(cand);
  } while (std::next_permutation(p.begin(), p.begin() + k));
  return *best;
}

void group_types(std::vector<TypeId>& types, TypeGrouping grouping) {
  std::sort(types.begin(), types.end());
  if (grouping == TypeGrouping::kSet) types.erase(std::unique(types.begin(), types.end()), types.end());
}

}  // namespace

TypedGraphletSignature parse_signature(const HeteroGraph& g, std::string_view text, TypeGrouping grouping) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "signature must look like 'skeleton:A,B,..'");
  }
  const auto skel = parse_skeleton(text.substr(0, colon));
  if (!skel) throw Error(ErrorCode::kInvalidArgument, "unknown skeleton '" + std::string(text.substr(0, colon)) + "'");
  const SkeletonInfo& info = skeleton_info(*skel);
  std::string_view rest = text.substr(colon + 1);
  std::string_view edge_part;
  if (const std::size_t bar = rest.find('|'); bar != std::string_view::npos) {
    edge_part = rest.substr(bar + 1);
    rest = rest.substr(0, bar);
  }
  TypedGraphletSignature sig;
  sig.skeleton = *skel;
  sig.grouping = grouping;
  for (std::string_view name : split(rest, ',')) {
    const TypeId t = g.find_node_type(name);
    if (t < 0) throw Error(ErrorCode::kInvalidArgument, "unknown node type '" + std::string(name) + "'");
    sig.node_types.push_back(t);
  }
  if (edge_part.empty()) {
    if (g.edge_type_count() != 1) {
      throw Error(ErrorCode::kInvalidArgument, "graph has several edge types; give them after '|'");
    }
    sig.edge_types.assign(info.edge_count(), 0);
  } else {
    for (std::string_view name : split(edge_part, ',')) {
      const TypeId t = g.find_edge_type(name);
      if (t < 0) throw Error(ErrorCode::kInvalidArgument, "unknown edge type '" + std::string(name) + "'");
      sig.edge_types.push_back(t);
    }
  }
  const auto n_nodes = static_cast<int>(sig.node_types.size());
  const auto n_edges = static_cast<int>(sig.edge_types.size());
  if (grouping == TypeGrouping::kSet) {
    if (n_nodes < 1 || n_nodes > info.node_count || n_edges < 1 || n_edges > info.edge_count()) {
      throw Error(ErrorCode::kInvalidArgument, "type set sizes do not fit the skeleton");
    }
  } else if (n_nodes != info.node_count || n_edges != info.edge_count()) {
    throw Error(ErrorCode::kInvalidArgument, "signature needs " + std::to_string(info.node_count) +
                                                 " node types and " + std::to_string(info.edge_count()) +
                                                 " edge types");
  }
  if (grouping == TypeGrouping::kStrict) {
    LocalAdjacency la;
    std::array<std::array<TypeId, 4>, 4> et{};
    for (int e = 0; e < info.edge_count(); ++e) {
      const auto [a, b] = info.edges[e];
      la.adj[a][b] = la.adj[b][a] = true;
      et[a][b] = et[b][a] = sig.edge_types[e];
    }
    auto [nt, ets] = canonical_positional(info, la, sig.node_types, et);
    sig.node_types = std::move(nt);
    sig.edge_types = std::move(ets);
  } else {
    group_types(sig.node_types, grouping);
    group_types(sig.edge_types, grouping);
  }
  return sig;
}

std::optional<Skeleton> classify_induced(const HeteroGraph& g, std::span<const NodeId> nodes) {
  const int k = static_cast<int>(nodes.size());
  if (k < 2 || k > 4) return std::nullopt;
  return classify(local_adjacency(g, nodes), k);
}

std::vector<std::array<int, 3>> instance_edges(const HeteroGraph& g, const GraphletInstance& inst) {
  std::vector<std::array<int, 3>> out;
  const auto nodes = inst.nodes();
  for (int i = 0; i < inst.size; ++i) {
    for (int j = i + 1; j < inst.size; ++j) {
      const int e = g.edge_index(nodes[i], nodes[j]);
      if (e >= 0) out.push_back({nodes[i], nodes[j], e});
    }
  }
  return out;
}

TypedGraphletSignature signature_of(const HeteroGraph& g, const GraphletInstance& inst, TypeGrouping grouping) {
  TypedGraphletSignature sig;
  sig.skeleton = inst.skeleton;
  sig.grouping = grouping;
  const auto nodes = inst.nodes();
  std::array<TypeId, 4> node_types{};
  for (int i = 0; i < inst.size; ++i) node_types[i] = g.node_type(nodes[i]);
  if (grouping != TypeGrouping::kStrict) {
    sig.node_types.assign(node_types.begin(), node_types.begin() + inst.size);
    for (const auto& e : instance_edges(g, inst)) sig.edge_types.push_back(g.edge_type(e[2]));
    group_types(sig.node_types, grouping);
    group_types(sig.edge_types, grouping);
    return sig;
  }
  LocalAdjacency la;
  std::array<std::array<TypeId, 4>, 4> et{};
  for (int i = 0; i < inst.size; ++i) {
    for (int j = i + 1; j < inst.size; ++j) {
      const int e = g.edge_index(nodes[i], nodes[j]);
      if (e >= 0) {
        la.adj[i][j] = la.adj[j][i] = true;
        et[i][j] = et[j][i] = g.edge_type(e);
      }
    }
  }
  auto [nt, ets] = canonical_positional(skeleton_info(inst.skeleton), la,
                                        std::span<const TypeId>(node_types.data(), inst.size), et);
  sig.node_types = std::move(nt);
  sig.edge_types = std::move(ets);
  return sig;
}

void for_each_instance(const HeteroGraph& g, Skeleton skel,
                       const std::function<void(const GraphletInstance&)>& visit) {
  const int k = skeleton_info(skel).node_count;
  const int want_edges = skeleton_info(skel).edge_count();
  std::vector<NodeId> frontier, frontier2, common;
  std::vector<std::pair<NodeId, NodeId>> seen;

  for (const Edge& e : g.edges()) {
    const NodeId u = e.u, v = e.v;
    if (k == 2) {
      visit(make_instance(skel, std::array<NodeId, 2>{u, v}));
      continue;
    }
    if (skel == Skeleton::kTriangle) {
      common.clear();
      const auto nu = g.neighbors(u), nv = g.neighbors(v);
      std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
      for (NodeId w : common) {
        // (u,v) is the smallest edge of {u,v,w} iff u < v < w.
        if (w > v) visit(make_instance(skel, std::array<NodeId, 3>{u, v, w}));
      }
      continue;
    }
    sorted_union(g.neighbors(u), g.neighbors(v), u, v, frontier);
    if (k == 3) {
      for (NodeId w : frontier) {
        std::array<NodeId, 3> nodes{u, v, w};
        std::sort(nodes.begin(), nodes.end());
        const LocalAdjacency la = local_adjacency(g, nodes);
        if (la.edges != want_edges) continue;
        if (smallest_edge(la, nodes) != std::make_pair(u, v)) continue;
        visit(make_instance(skel, nodes));
      }
      continue;
    }
    // k == 4: third node from N(u) | N(v), fourth from N(u) | N(v) | N(w).
    seen.clear();
    for (NodeId w : frontier) {
      const auto nw = g.neighbors(w);
      frontier2.clear();
      std::set_union(frontier.begin(), frontier.end(), nw.begin(), nw.end(), std::back_inserter(frontier2));
      for (NodeId x : frontier2) {
        if (x == u || x == v || x == w) continue;
        seen.emplace_back(std::min(w, x), std::max(w, x));
      }
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto [w, x] : seen) {
      std::array<NodeId, 4> nodes{u, v, w, x};
      std::sort(nodes.begin(), nodes.end());
      const LocalAdjacency la = local_adjacency(g, nodes);
      if (la.edges != want_edges) continue;
      const auto cls = classify(la, 4);
      if (!cls || *cls != skel) continue;
      if (smallest_edge(la, nodes) != std::make_pair(u, v)) continue;
      visit(make_instance(skel, nodes));
    }
  }
}

std::vector<GraphletInstance> enumerate_instances(const HeteroGraph& g, Skeleton skel) {
  std::vector<GraphletInstance> out;
  for_each_instance(g, skel, [&](const GraphletInstance& inst) { out.push_back(inst); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GraphletInstance> enumerate_typed_instances(const HeteroGraph& g, const TypedGraphletSignature& sig) {
  std::vector<GraphletInstance> out;
  for_each_instance(g, sig.skeleton, [&](const GraphletInstance& inst) {
    if (signature_of(g, inst, sig.grouping) == sig) out.push_back(inst);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GraphletInstance> brute_force_instances(const HeteroGraph& g, Skeleton skel) {
  const int n = g.node_count();
  if (n > 64) throw Error(ErrorCode::kGuardExceeded, "brute-force enumeration limited to 64 nodes");
  const SkeletonInfo& info = skeleton_info(skel);
  const int k = info.node_count;
  std::vector<std::uint64_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  std::array<std::array<bool, 4>, 4> pattern{};
  for (auto [a, b] : info.edges) pattern[a][b] = pattern[b][a] = true;

  std::vector<GraphletInstance> out;
  if (n < k) return out;
  std::array<NodeId, 4> pick{};
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    // Isomorphic iff some position map reproduces the induced adjacency exactly.
    std::array<int, 4> p{0, 1, 2, 3};
    bool iso = false;
    do {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        for (int j = i + 1; j < k && ok; ++j) {
          const bool has = (adj[pick[p[i]]] >> pick[p[j]]) & 1U;
          ok = has == pattern[i][j];
        }
      }
      iso = ok;
    } while (!iso && std::next_permutation(p.begin(), p.begin() + k));
    if (iso) out.push_back(make_instance(skel, std::span<const NodeId>(pick.data(), k)));
    // Next k-combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

Census census(const HeteroGraph& g, std::span<const Skeleton> skeletons, TypeGrouping grouping) {
  Census out;
  for (Skeleton s : skeletons) {
    for_each_instance(g, s, [&](const GraphletInstance& inst) { ++out[signature_of(g, inst, grouping)]; });
  }
  return out;
}

Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor, int> per_edge_instance_counts(const HeteroGraph& g,
                                                                                 const TypedGraphletSignature& sig) {
  std::vector<std::int64_t> per_edge(g.edge_count(), 0);
  for_each_instance(g, sig.skeleton, [&](const GraphletInstance& inst) {
    if (signature_of(g, inst, sig.grouping) != sig) return;
    for (const auto& e : instance_edges(g, inst)) ++per_edge[e[2]];
  });
  std::vector<Eigen::Triplet<std::int64_t>> t;
  for (int i = 0; i < g.edge_count(); ++i) {
    if (per_edge[i] == 0) continue;
    const Edge& e = g.edges()[i];
    t.emplace_back(e.u, e.v, per_edge[i]);
    t.emplace_back(e.v, e.u, per_edge[i]);
  }
  Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor, int> w(g.node_count(), g.node_count());
  w.setFromTriplets(t.begin(), t.end());
  w.makeCompressed();
  return w;
}

}  // namespace tgsc
