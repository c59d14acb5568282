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

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tgsc/graph.hpp"

namespace tgsc::testing {

inline std::vector<std::string> type_names(int count) {
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
  return names;
}

/// Erdos-Renyi graph with uniformly random node types and edge types.
inline HeteroGraph random_typed_graph(int n, int node_types, double density, std::mt19937_64& rng,
                                      int edge_types = 1) {
  std::uniform_int_distribution<int> pick_type(0, node_types - 1);
  std::uniform_int_distribution<int> pick_edge_type(0, edge_types - 1);
  std::bernoulli_distribution coin(density);
  std::vector<TypeId> types(n);
  for (auto& t : types) t = pick_type(rng);
  std::vector<Edge> edges;
  std::vector<TypeId> etypes;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) {
        edges.push_back({u, v});
        etypes.push_back(pick_edge_type(rng));
      }
    }
  }
  return HeteroGraph(n, std::move(edges), std::move(types), std::move(etypes), type_names(node_types),
                     edge_types == 1 ? std::vector<std::string>{"_"} : type_names(edge_types));
}

struct PlantedGraph {
  HeteroGraph graph;
  std::vector<int> block;  // block label per node
};

/// Stochastic block model. Node v is in block v / block_size; its type is
/// drawn uniformly from `node_types` types.
inline PlantedGraph planted_partition(int blocks, int block_size, double p_in, double p_out, int node_types,
                                      std::mt19937_64& rng) {
  const int n = blocks * block_size;
  std::uniform_int_distribution<int> pick_type(0, node_types - 1);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  PlantedGraph out;
  std::vector<TypeId> types(n);
  for (NodeId v = 0; v < n; ++v) {
    types[v] = pick_type(rng);
    out.block.push_back(v / block_size);
  }
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = out.block[u] == out.block[v] ? p_in : p_out;
      if (uni(rng) < p) edges.push_back({u, v});
    }
  }
  const auto m = edges.size();
  out.graph = HeteroGraph(n, std::move(edges), std::move(types), std::vector<TypeId>(m, 0), type_names(node_types),
                          {"_"});
  return out;
}

/// Same block model with node ids interleaved round-robin across blocks, so
/// the native order mixes blocks.
inline PlantedGraph interleaved_planted_partition(int blocks, int block_size, double p_in, double p_out,
                                                  int node_types, std::mt19937_64& rng) {
  PlantedGraph p = planted_partition(blocks, block_size, p_in, p_out, node_types, rng);
  const int n = p.graph.node_count();
  std::vector<NodeId> order(n);
  for (int i = 0; i < n; ++i) order[i] = (i % blocks) * block_size + i / blocks;
  PlantedGraph out;
  out.graph = permute(p.graph, order);
  for (int i = 0; i < n; ++i) out.block.push_back(p.block[order[i]]);
  return out;
}

/// Disjoint union of cliques of the given sizes, one node type.
inline HeteroGraph clique_union(const std::vector<int>& sizes) {
  std::vector<Edge> edges;
  int base = 0;
  for (int s : sizes) {
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) edges.push_back({base + i, base + j});
    }
    base += s;
  }
  const auto m = edges.size();
  return HeteroGraph(base, std::move(edges), std::vector<TypeId>(base, 0), std::vector<TypeId>(m, 0), {"U"}, {"_"});
}

/// Single-type graph from an edge list.
inline HeteroGraph plain_graph(int n, std::vector<Edge> edges, std::string type = "U") {
  const auto m = edges.size();
  return HeteroGraph(n, std::move(edges), std::vector<TypeId>(n, 0), std::vector<TypeId>(m, 0), {std::move(type)},
                     {"_"});
}

/// Two triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
inline HeteroGraph barbell() {
  return plain_graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

}  // namespace tgsc::testing
