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

#include "tgsc/motif_matrix.hpp"

#include <bit>
#include <ostream>

namespace tgsc {

MotifMatrix::MotifMatrix(const HeteroGraph& g, TypedGraphletSignature sig)
    : signature_(std::move(sig)),
      instances_(enumerate_typed_instances(g, signature_)),
      instance_degree_(g.node_count(), 0),
      membership_(g.node_count(), 0) {
  std::vector<std::int64_t> per_edge(g.edge_count(), 0);
  for (const GraphletInstance& inst : instances_) {
    for (const auto& e : instance_edges(g, inst)) {
      ++per_edge[e[2]];
      ++instance_degree_[e[0]];
      ++instance_degree_[e[1]];
    }
    for (NodeId v : inst.nodes()) ++membership_[v];
  }
  std::vector<Eigen::Triplet<std::int64_t>> t;
  for (int i = 0; i < g.edge_count(); ++i) {
    if (per_edge[i] > 0) t.emplace_back(g.edges()[i].u, g.edges()[i].v, per_edge[i]);
  }
  graph_ = WeightedGraph<std::int64_t>(g.node_count(), t);
}

std::vector<NodeId> MotifMatrix::covered_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (degrees()[v] > 0) out.push_back(v);
  }
  return out;
}

std::int64_t typed_degree(const MotifMatrix& mm, NodeId v) { return mm.instance_degree(v); }

std::int64_t typed_volume(const MotifMatrix& mm, const NodeSet& s) {
  std::int64_t vol = 0;
  for (NodeId v = 0; v < mm.node_count(); ++v) {
    if (s.contains(v)) vol += mm.instance_degree(v);
  }
  return vol;
}

std::int64_t typed_cut(const MotifMatrix& mm, const NodeSet& s) {
  if (s.node_count() != mm.node_count() || !s.is_proper_cut()) {
    throw Error(ErrorCode::kDegenerateCut, "typed cut: cut has an empty side");
  }
  std::int64_t cut = 0;
  for (const GraphletInstance& inst : mm.instances()) {
    int inside = 0;
    for (NodeId v : inst.nodes()) inside += s.contains(v) ? 1 : 0;
    if (inside > 0 && inside < inst.size) ++cut;
  }
  return cut;
}

std::int64_t typed_cut(const HeteroGraph& g, const TypedGraphletSignature& sig, const NodeSet& s) {
  return typed_cut(MotifMatrix(g, sig), s);
}

double typed_conductance(const MotifMatrix& mm, const NodeSet& s) {
  const std::int64_t cut = typed_cut(mm, s);
  const std::int64_t vol_s = typed_volume(mm, s);
  const std::int64_t vol_rest = typed_volume(mm, s.complement());
  const std::int64_t denom = std::min(vol_s, vol_rest);
  if (denom == 0) {
    throw Error(ErrorCode::kUndefinedMeasure,
                "typed conductance undefined: no instance touches one side of the cut");
  }
  return static_cast<double>(cut) / static_cast<double>(denom);
}

double typed_conductance(const HeteroGraph& g, const TypedGraphletSignature& sig, const NodeSet& s) {
  return typed_conductance(MotifMatrix(g, sig), s);
}

CutOptimum brute_force_min_conductance(const MotifMatrix& mm) {
  const int n = mm.node_count();
  if (n > 20) throw Error(ErrorCode::kGuardExceeded, "brute-force typed conductance limited to 20 nodes");
  if (n < 2) throw Error(ErrorCode::kDegenerateCut, "no cut exists on fewer than two nodes");
  std::vector<std::uint32_t> inst_mask;
  inst_mask.reserve(mm.instances().size());
  for (const GraphletInstance& inst : mm.instances()) {
    std::uint32_t m = 0;
    for (NodeId v : inst.nodes()) m |= 1U << v;
    inst_mask.push_back(m);
  }
  std::int64_t total = 0;
  for (NodeId v = 0; v < n; ++v) total += mm.instance_degree(v);

  const std::uint32_t full = (1U << n) - 1U;
  bool found = false;
  std::int64_t best_cut = 0, best_vol = 1;
  int best_size = 0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int size = std::popcount(mask);
    if (n - size < size) continue;
    if (2 * size == n && !(mask & 1U)) continue;  // equal halves: keep the side holding node 0
    std::int64_t vol = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) vol += mm.instance_degree(std::countr_zero(rest));
    const std::int64_t denom = std::min(vol, total - vol);
    if (denom <= 0) continue;
    std::int64_t cut = 0;
    for (std::uint32_t m : inst_mask) {
      if ((m & mask) && (m & ~mask)) ++cut;
    }
    const __int128 lhs = static_cast<__int128>(cut) * best_vol;
    const __int128 rhs = static_cast<__int128>(best_cut) * denom;
    bool better = !found || lhs < rhs;
    if (found && lhs == rhs) {
      if (size != best_size) {
        better = size < best_size;
      } else {
        better = (mask >> std::countr_zero(mask ^ best_mask)) & 1U;
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
  if (!found) throw Error(ErrorCode::kDegenerateCut, "every cut leaves one side without typed volume");
  CutOptimum out;
  out.set = NodeSet::from_mask(n, best_mask);
  out.value = static_cast<double>(best_cut) / static_cast<double>(best_vol);
  return out;
}

CutOptimum brute_force_min_conductance(const HeteroGraph& g, const TypedGraphletSignature& sig) {
  return brute_force_min_conductance(MotifMatrix(g, sig));
}

double edge_expansion_measure(const MotifMatrix& mm, const NodeSet& s) {
  const std::int64_t cut = typed_cut(mm, s);
  std::int64_t size_s = 0, size_rest = 0;
  for (NodeId v = 0; v < mm.node_count(); ++v) {
    (s.contains(v) ? size_s : size_rest) += mm.instance_membership(v);
  }
  const std::int64_t denom = std::min(size_s, size_rest);
  if (denom == 0) {
    throw Error(ErrorCode::kUndefinedMeasure, "edge expansion undefined: one side is in no instance");
  }
  return static_cast<double>(cut) / static_cast<double>(denom);
}

NormalizedLaplacian<double> normalized_laplacian(const MotifMatrix& mm) {
  if (mm.instance_count() == 0) {
    throw Error(ErrorCode::kGraphletAbsent, "graphlet absent from graph");
  }
  return normalized_laplacian<double>(mm.graph());
}

void write_matrix(std::ostream& out, const MotifMatrix& mm) {
  out << mm.node_count() << ' ' << mm.weights().nonZeros() / 2 << '\n';
  for (int i = 0; i < mm.node_count(); ++i) {
    for (MotifMatrix::Matrix::InnerIterator it(mm.weights(), i); it; ++it) {
      if (it.col() > i) out << i << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace tgsc
