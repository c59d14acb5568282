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

#include "tgsc/graph.hpp"

#include <bit>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tgsc {

namespace {

constexpr std::string_view kDefaultEdgeType = "_";

}  // namespace

HeteroGraph::HeteroGraph(int node_count, std::vector<Edge> edges,
                         std::vector<TypeId> node_types, std::vector<TypeId> edge_types,
                         std::vector<std::string> node_type_names,
                         std::vector<std::string> edge_type_names,
                         std::vector<std::string> external_ids)
    : node_count_(node_count),
      node_type_names_(std::move(node_type_names)),
      edge_type_names_(std::move(edge_type_names)) {
  if (node_count < 0) throw Error(ErrorCode::kInvalidArgument, "negative node count");
  if (static_cast<int>(node_types.size()) != node_count) {
    throw Error(ErrorCode::kInvalidArgument, "every node needs exactly one type");
  }
  if (edge_types.size() != edges.size()) {
    throw Error(ErrorCode::kInvalidArgument, "every edge needs exactly one type");
  }
  if (node_type_names_.empty()) node_type_names_.push_back("_");
  if (edge_type_names_.empty()) edge_type_names_.push_back(std::string(kDefaultEdgeType));
  for (TypeId t : node_types) {
    if (t < 0 || t >= node_type_count()) {
      throw Error(ErrorCode::kInvalidArgument, "node type id out of range");
    }
  }
  for (TypeId t : edge_types) {
    if (t < 0 || t >= edge_type_count()) {
      throw Error(ErrorCode::kInvalidArgument, "edge type id out of range");
    }
  }
  if (external_ids.empty()) {
    external_ids.resize(node_count);
    for (int i = 0; i < node_count; ++i) external_ids[i] = std::to_string(i);
  } else if (static_cast<int>(external_ids.size()) != node_count) {
    throw Error(ErrorCode::kInvalidArgument, "external id table size mismatch");
  }
  external_ids_ = std::move(external_ids);
  node_types_ = std::move(node_types);

  std::vector<std::pair<Edge, TypeId>> typed(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge e = edges[i];
    if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count) {
      throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    if (e.u == e.v) throw Error(ErrorCode::kInvalidArgument, "self-loop");
    if (e.u > e.v) std::swap(e.u, e.v);
    typed[i] = {e, edge_types[i]};
  }
  std::sort(typed.begin(), typed.end());
  for (std::size_t i = 1; i < typed.size(); ++i) {
    if (typed[i].first == typed[i - 1].first) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate edge");
    }
  }
  edges_.reserve(typed.size());
  edge_types_.reserve(typed.size());
  for (const auto& [e, t] : typed) {
    edges_.push_back(e);
    edge_types_.push_back(t);
  }

  offsets_.assign(node_count + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  adjacency_edge_.resize(2 * edges_.size());
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (int i = 0; i < edge_count(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[cursor[e.u]] = e.v;
    adjacency_edge_[cursor[e.u]++] = i;
    adjacency_[cursor[e.v]] = e.u;
    adjacency_edge_[cursor[e.v]++] = i;
  }
  // Sort each list by neighbor id.
  for (NodeId v = 0; v < node_count; ++v) {
    std::vector<std::pair<NodeId, int>> tmp;
    tmp.reserve(degree(v));
    for (int k = offsets_[v]; k < offsets_[v + 1]; ++k) tmp.emplace_back(adjacency_[k], adjacency_edge_[k]);
    std::sort(tmp.begin(), tmp.end());
    for (int k = offsets_[v], j = 0; k < offsets_[v + 1]; ++k, ++j) {
      adjacency_[k] = tmp[j].first;
      adjacency_edge_[k] = tmp[j].second;
    }
  }
}

int HeteroGraph::edge_index(NodeId u, NodeId v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return -1;
  return adjacency_edge_[offsets_[u] + (it - nb.begin())];
}

bool HeteroGraph::has_edge(NodeId u, NodeId v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

TypeId HeteroGraph::find_node_type(std::string_view name) const {
  for (TypeId t = 0; t < node_type_count(); ++t) {
    if (node_type_names_[t] == name) return t;
  }
  return -1;
}

TypeId HeteroGraph::find_edge_type(std::string_view name) const {
  for (TypeId t = 0; t < edge_type_count(); ++t) {
    if (edge_type_names_[t] == name) return t;
  }
  return -1;
}

NodeSet::NodeSet(int node_count, std::span<const NodeId> members) : member_(node_count, 0) {
  for (NodeId v : members) {
    if (v < 0 || v >= node_count) throw Error(ErrorCode::kInvalidArgument, "node set member out of range");
    member_[v] = 1;
  }
}

NodeSet NodeSet::from_mask(int node_count, std::uint64_t mask) {
  NodeSet s(node_count);
  for (int v = 0; v < node_count; ++v) {
    if ((mask >> v) & 1U) s.member_[v] = 1;
  }
  return s;
}

int NodeSet::size() const {
  return static_cast<int>(std::count(member_.begin(), member_.end(), char{1}));
}

NodeSet NodeSet::complement() const {
  NodeSet c(node_count());
  for (std::size_t i = 0; i < member_.size(); ++i) c.member_[i] = member_[i] ? 0 : 1;
  return c;
}

std::vector<NodeId> NodeSet::members() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i]) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

CutOptimum brute_force_min_weighted_conductance(const WeightedGraph<std::int64_t>& g) {
  const int n = g.node_count();
  if (n > 20) throw Error(ErrorCode::kGuardExceeded, "brute-force conductance limited to 20 nodes");
  const std::int64_t total = g.total_volume();
  CutOptimum best;
  std::int64_t best_cut = 0, best_vol = 0;
  bool found = false;
  int best_size = 0;
  std::uint32_t best_mask = 0;
  const std::uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1U);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::int64_t vol = 0, cut = 0;
    for (int v = 0; v < n; ++v) {
      if (!((mask >> v) & 1U)) continue;
      vol += g.degree(v);
      for (WeightedGraph<std::int64_t>::Matrix::InnerIterator it(g.weights(), v); it; ++it) {
        if (!((mask >> it.col()) & 1U)) cut += it.value();
      }
    }
    const std::int64_t denom = std::min(vol, total - vol);
    if (denom <= 0) continue;
    // Represent each cut by its smaller side (ties: lexicographically smaller).
    const std::uint32_t other = full & ~mask;
    const int size = std::popcount(mask);
    const int other_size = n - size;
    if (other_size < size) continue;
    if (other_size == size) {
      const int lowest_mask = std::countr_zero(mask ^ other);
      if (!((mask >> lowest_mask) & 1U)) continue;
    }
    const __int128 lhs = static_cast<__int128>(cut) * best_vol;
    const __int128 rhs = static_cast<__int128>(best_cut) * denom;
    bool better = !found || lhs < rhs;
    if (found && lhs == rhs) {
      if (size < best_size) {
        better = true;
      } else if (size == best_size) {
        // Lexicographic membership: the set containing the lowest differing node wins.
        const int diff = std::countr_zero(mask ^ best_mask);
        better = ((mask >> diff) & 1U) != 0;
      }
    }
    if (better) {
      found = true;
      best_cut = cut;
      best_vol = denom;
      best_size = size;
      best_mask = mask;
    }
  }
  if (!found) throw Error(ErrorCode::kDegenerateCut, "no cut with positive volume on both sides");
  best.set = NodeSet::from_mask(n, best_mask);
  best.value = static_cast<double>(best_cut) / static_cast<double>(best_vol);
  return best;
}

WeightedGraph<std::int64_t> unit_weighted(const HeteroGraph& g) {
  std::vector<Eigen::Triplet<std::int64_t>> t;
  t.reserve(g.edge_count());
  for (const Edge& e : g.edges()) t.emplace_back(e.u, e.v, 1);
  return WeightedGraph<std::int64_t>(g.node_count(), t);
}

std::vector<NodeId> inverse_permutation(std::span<const NodeId> order) {
  const int n = static_cast<int>(order.size());
  std::vector<NodeId> inv(n, -1);
  for (int i = 0; i < n; ++i) {
    const NodeId v = order[i];
    if (v < 0 || v >= n || inv[v] != -1) {
      throw Error(ErrorCode::kInvalidArgument, "order is not a permutation");
    }
    inv[v] = i;
  }
  return inv;
}

HeteroGraph permute(const HeteroGraph& g, std::span<const NodeId> order) {
  if (static_cast<int>(order.size()) != g.node_count()) {
    throw Error(ErrorCode::kInvalidArgument, "permutation size does not match node count");
  }
  const std::vector<NodeId> new_id = inverse_permutation(order);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({new_id[e.u], new_id[e.v]});
  std::vector<TypeId> node_types(g.node_count());
  std::vector<std::string> ids(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) {
    node_types[i] = g.node_type(order[i]);
    ids[i] = g.external_id(order[i]);
  }
  std::vector<TypeId> edge_types(g.edge_types().begin(), g.edge_types().end());
  return HeteroGraph(g.node_count(), std::move(edges), std::move(node_types), std::move(edge_types),
                     g.node_type_names(), g.edge_type_names(), std::move(ids));
}

HeteroGraph induced_subgraph(const HeteroGraph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> local(g.node_count(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && nodes[i] <= nodes[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "induced_subgraph: nodes must be sorted and distinct");
    }
    local[nodes[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> edges;
  std::vector<TypeId> edge_types;
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (local[e.u] >= 0 && local[e.v] >= 0) {
      edges.push_back({local[e.u], local[e.v]});
      edge_types.push_back(g.edge_type(i));
    }
  }
  std::vector<TypeId> node_types;
  std::vector<std::string> ids;
  for (NodeId v : nodes) {
    node_types.push_back(g.node_type(v));
    ids.push_back(g.external_id(v));
  }
  return HeteroGraph(static_cast<int>(nodes.size()), std::move(edges), std::move(node_types),
                     std::move(edge_types), g.node_type_names(), g.edge_type_names(), std::move(ids));
}

HeteroGraph remove_edges(const HeteroGraph& g, std::span<const int> edge_indices) {
  std::vector<char> drop(g.edge_count(), 0);
  for (int i : edge_indices) drop.at(i) = 1;
  std::vector<Edge> edges;
  std::vector<TypeId> edge_types;
  for (int i = 0; i < g.edge_count(); ++i) {
    if (drop[i]) continue;
    edges.push_back(g.edges()[i]);
    edge_types.push_back(g.edge_type(i));
  }
  return HeteroGraph(g.node_count(), std::move(edges),
                     std::vector<TypeId>(g.node_types().begin(), g.node_types().end()),
                     std::move(edge_types), g.node_type_names(), g.edge_type_names(), g.external_ids());
}

HeteroGraph strip_types(const HeteroGraph& g) {
  return HeteroGraph(g.node_count(), std::vector<Edge>(g.edges().begin(), g.edges().end()),
                     std::vector<TypeId>(g.node_count(), 0), std::vector<TypeId>(g.edge_count(), 0), {"_"}, {"_"},
                     g.external_ids());
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void parse_error(int line_no, const std::string& msg) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

HeteroGraph parse_typed_edge_list(std::string_view text, LoadStats* stats) {
  struct RawEdge {
    NodeId u, v;
    std::string type;
    int line;
  };
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> external;
  std::vector<std::string> node_type_name;  // per node, by name
  std::vector<RawEdge> raw;
  std::set<std::string> declared_node_types, declared_edge_types;
  bool restrict_node_types = false, restrict_edge_types = false;
  LoadStats local_stats;

  auto intern = [&](std::string_view name, std::string_view type, int line_no) {
    const std::string key(name);
    auto it = ids.find(key);
    if (it == ids.end()) {
      const NodeId id = static_cast<NodeId>(external.size());
      ids.emplace(key, id);
      external.push_back(key);
      node_type_name.emplace_back(type);
      return id;
    }
    if (node_type_name[it->second] != type) {
      parse_error(line_no, "node '" + key + "' declared with conflicting types '" +
                               node_type_name[it->second] + "' and '" + std::string(type) + "'");
    }
    return it->second;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0].starts_with('#')) {
      ++local_stats.comment_lines;
      continue;
    }
    if (tok[0] == "%node") {
      if (tok.size() != 3) parse_error(line_no, "expected '%node id type'");
      intern(tok[1], tok[2], line_no);
      continue;
    }
    if (tok[0] == "%node-types" || tok[0] == "%edge-types") {
      auto& target = tok[0] == "%node-types" ? declared_node_types : declared_edge_types;
      (tok[0] == "%node-types" ? restrict_node_types : restrict_edge_types) = true;
      for (std::size_t i = 1; i < tok.size(); ++i) target.emplace(tok[i]);
      continue;
    }
    if (tok[0].starts_with('%')) parse_error(line_no, "unknown directive '" + std::string(tok[0]) + "'");
    if (tok.size() != 4 && tok.size() != 5) {
      parse_error(line_no, "expected 4 or 5 columns 'src dst src_type dst_type [edge_type]', got " +
                               std::to_string(tok.size()));
    }
    if (tok[0] == tok[1]) parse_error(line_no, "self-loop on '" + std::string(tok[0]) + "'");
    const NodeId u = intern(tok[0], tok[2], line_no);
    const NodeId v = intern(tok[1], tok[3], line_no);
    raw.push_back({u, v, tok.size() == 5 ? std::string(tok[4]) : std::string(kDefaultEdgeType), line_no});
  }

  // Type vocabularies in sorted name order.
  std::set<std::string> node_type_set(node_type_name.begin(), node_type_name.end());
  std::set<std::string> edge_type_set;
  for (const auto& e : raw) edge_type_set.insert(e.type);
  if (restrict_node_types) {
    for (std::size_t v = 0; v < node_type_name.size(); ++v) {
      if (!declared_node_types.count(node_type_name[v])) {
        throw Error(ErrorCode::kParse, "unknown node type '" + node_type_name[v] + "' on node '" + external[v] + "'");
      }
    }
    node_type_set.insert(declared_node_types.begin(), declared_node_types.end());
  }
  if (restrict_edge_types) {
    for (const auto& e : raw) {
      if (!declared_edge_types.count(e.type)) parse_error(e.line, "unknown edge type '" + e.type + "'");
    }
    edge_type_set.insert(declared_edge_types.begin(), declared_edge_types.end());
  }
  std::vector<std::string> node_type_names(node_type_set.begin(), node_type_set.end());
  std::vector<std::string> edge_type_names(edge_type_set.begin(), edge_type_set.end());
  auto index_of = [](const std::vector<std::string>& names, const std::string& n) {
    return static_cast<TypeId>(std::lower_bound(names.begin(), names.end(), n) - names.begin());
  };

  std::map<std::pair<NodeId, NodeId>, std::pair<std::string, int>> unique;
  for (const auto& e : raw) {
    const auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = unique.emplace(key, std::make_pair(e.type, e.line));
    if (!inserted) {
      if (it->second.first != e.type) {
        parse_error(e.line, "edge '" + external[e.u] + " " + external[e.v] + "' has conflicting edge types '" +
                                it->second.first + "' (line " + std::to_string(it->second.second) + ") and '" +
                                e.type + "'");
      }
      ++local_stats.collapsed_duplicates;
    }
  }
  std::vector<Edge> edges;
  std::vector<TypeId> edge_types;
  edges.reserve(unique.size());
  for (const auto& [key, val] : unique) {
    edges.push_back({key.first, key.second});
    edge_types.push_back(index_of(edge_type_names, val.first));
  }
  std::vector<TypeId> node_types(external.size());
  for (std::size_t v = 0; v < external.size(); ++v) node_types[v] = index_of(node_type_names, node_type_name[v]);
  if (stats) *stats = local_stats;
  const int n = static_cast<int>(external.size());
  return HeteroGraph(n, std::move(edges), std::move(node_types),
                     std::move(edge_types), std::move(node_type_names), std::move(edge_type_names),
                     std::move(external));
}

HeteroGraph load_typed_edge_list(std::istream& in, LoadStats* stats) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_typed_edge_list(buffer.str(), stats);
}

HeteroGraph load_typed_edge_list_file(const std::string& path, LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return load_typed_edge_list(in, stats);
}

void write_typed_edge_list(std::ostream& out, const HeteroGraph& g) {
  const bool typed_edges = !(g.edge_type_count() == 1 && g.edge_type_names()[0] == kDefaultEdgeType);
  // Every node is declared, isolated or not.
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << "%node " << g.external_id(v) << ' ' << g.node_type_names()[g.node_type(v)] << '\n';
  }
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    out << g.external_id(e.u) << ' ' << g.external_id(e.v) << ' ' << g.node_type_names()[g.node_type(e.u)] << ' '
        << g.node_type_names()[g.node_type(e.v)];
    if (typed_edges) out << ' ' << g.edge_type_names()[g.edge_type(i)];
    out << '\n';
  }
}

}  // namespace tgsc
