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

#include "tgsc/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace tgsc {

namespace {

struct Fiedler {
  double lambda2 = 0.0;
  Eigen::VectorXd key;
};

Fiedler fiedler(const NormalizedLaplacian<double>& lap, const SpectralOptions& opt) {
  const auto pairs = smallest_eigenpairs<double>(lap.matrix, 2, opt.eigen);
  Fiedler f;
  f.lambda2 = pairs.values[1];
  f.key = pairs.vectors.col(1);
  if (opt.sweep_vector == SweepVector::kDegreeScaled) f.key = f.key.cwiseQuotient(lap.sqrt_degree);
  return f;
}

// Components of G^H with at least two nodes, in label order.
std::vector<std::vector<NodeId>> eligible_components(const MotifMatrix& mm) {
  const Components comps = connected_components(mm.graph());
  std::vector<std::vector<NodeId>> out;
  for (const auto& members : comps.members) {
    if (members.size() >= 2) out.push_back(members);
  }
  return out;
}

std::vector<NodeId> uncovered_nodes(const MotifMatrix& mm) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < mm.node_count(); ++v) {
    if (mm.degrees()[v] == 0) out.push_back(v);
  }
  return out;
}

}  // namespace

ClusterResult cluster(const MotifMatrix& mm, const SpectralOptions& opt) {
  if (mm.instance_count() == 0) throw Error(ErrorCode::kGraphletAbsent, "graphlet absent from graph");
  const auto comps = eligible_components(mm);
  if (comps.empty()) throw Error(ErrorCode::kGraphletAbsent, "every component of G^H has fewer than two nodes");

  ClusterResult best;
  best.components = static_cast<int>(comps.size());
  best.uncovered = uncovered_nodes(mm);
  double phi_min = std::numeric_limits<double>::infinity();
  std::vector<NodeId> chosen;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    if (phi_min == 0.0) break;
    const auto lap = normalized_laplacian<double>(mm.graph(), std::span<const NodeId>(comps[c]));
    const Fiedler f = fiedler(lap, opt);
    SweepResult sweep = sweep_cut(mm.graph(), std::span<const NodeId>(lap.nodes), f.key);
    double phi = sweep.best_conductance;
    int k = sweep.best_k;
    std::vector<NodeId> s(sweep.order.begin(), sweep.order.begin() + k);
    if (comps.size() > 1) {
      // The whole component is a cut of G^H with nothing crossing it.
      phi = 0.0;
      k = static_cast<int>(comps[c].size());
      s = comps[c];
    }
    if (phi < phi_min) {
      phi_min = phi;
      chosen = std::move(s);
      best.component = c;
      best.best_k = k;
      best.component_lambda2 = f.lambda2;
      best.sweep = std::move(sweep);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  const int n = mm.node_count();
  if (2 * static_cast<int>(chosen.size()) < n) {
    best.cluster = std::move(chosen);
  } else {
    best.cluster = NodeSet(n, chosen).complement().members();
  }
  best.phi_weighted = phi_min;
  best.alpha_typed = typed_conductance(mm, NodeSet(n, best.cluster));
  best.lambda2 = comps.size() > 1 ? 0.0 : best.component_lambda2;
  best.beta = approximation_factor(best.lambda2, mm.graphlet_edge_count());
  return best;
}

ClusterResult cluster(const HeteroGraph& g, const TypedGraphletSignature& sig, const SpectralOptions& opt) {
  return cluster(MotifMatrix(g, sig), opt);
}

Partition recursive_bipartition(const HeteroGraph& g, const TypedGraphletSignature& sig, int target_k,
                                const SpectralOptions& opt) {
  if (target_k < 2) throw Error(ErrorCode::kInvalidArgument, "recursive bipartition needs target_k >= 2");
  Partition out;
  const MotifMatrix whole(g, sig);
  const auto covered = whole.covered_nodes();
  if (covered.empty()) {
    out.early_stop = true;
    return out;
  }
  out.parts.push_back(covered);
  while (static_cast<int>(out.parts.size()) < target_k) {
    // Largest part; ties go to the one with the smallest first node.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < out.parts.size(); ++i) {
      const auto& a = out.parts[i];
      const auto& b = out.parts[pick];
      if (a.size() > b.size() || (a.size() == b.size() && a.front() < b.front())) pick = i;
    }
    const auto& part = out.parts[pick];
    const HeteroGraph sub = induced_subgraph(g, part);
    const MotifMatrix mm(sub, sig);
    if (mm.instance_count() == 0) {
      out.early_stop = true;
      break;
    }
    const ClusterResult res = cluster(mm, opt);
    NodeSet side(sub.node_count(), res.cluster);
    std::vector<NodeId> a, b;
    for (NodeId v = 0; v < sub.node_count(); ++v) (side.contains(v) ? a : b).push_back(part[v]);
    const auto has_instances = [&](const std::vector<NodeId>& nodes) {
      return !nodes.empty() && MotifMatrix(induced_subgraph(g, nodes), sig).instance_count() > 0;
    };
    if (!has_instances(a) || !has_instances(b)) {
      out.early_stop = true;
      break;
    }
    out.parts[pick] = std::move(a);
    out.parts.push_back(std::move(b));
  }
  std::sort(out.parts.begin(), out.parts.end());
  return out;
}

Ordering spectral_ordering(const MotifMatrix& mm, const SpectralOptions& opt) {
  Ordering out;
  const int n = mm.node_count();
  if (mm.instance_count() == 0) {
    out.graphlet_absent = true;
    out.order.resize(n);
    std::iota(out.order.begin(), out.order.end(), 0);
    return out;
  }
  auto comps = eligible_components(mm);
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& comp : comps) {
    const auto lap = normalized_laplacian<double>(mm.graph(), std::span<const NodeId>(comp));
    const Fiedler f = fiedler(lap, opt);
    std::vector<int> idx(lap.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      if (f.key[a] != f.key[b]) return f.key[a] < f.key[b];
      return lap.nodes[a] < lap.nodes[b];
    });
    for (int i : idx) out.order.push_back(lap.nodes[i]);
  }
  for (NodeId v : uncovered_nodes(mm)) out.order.push_back(v);
  return out;
}

Ordering spectral_ordering(const HeteroGraph& g, const TypedGraphletSignature& sig, const SpectralOptions& opt) {
  return spectral_ordering(MotifMatrix(g, sig), opt);
}

Embedding spectral_embedding(const MotifMatrix& mm, int dim, const SpectralOptions& opt) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "embedding dimension must be at least 1");
  Embedding out;
  out.z = Eigen::MatrixXd::Zero(mm.node_count(), dim);
  out.uncovered = uncovered_nodes(mm);
  const int skip = opt.drop_trivial ? 1 : 0;
  for (const auto& comp : eligible_components(mm)) {
    const auto lap = normalized_laplacian<double>(mm.graph(), std::span<const NodeId>(comp));
    const int available = lap.size() - skip;
    const int d = std::min(dim, available);
    if (d <= 0) continue;
    const auto pairs = smallest_eigenpairs<double>(lap.matrix, d + skip, opt.eigen);
    for (int i = 0; i < lap.size(); ++i) {
      Eigen::VectorXd row = pairs.vectors.row(i).segment(skip, d).transpose();
      const double norm = row.norm();
      if (norm > 0) row /= norm;
      out.z.row(lap.nodes[i]).head(d) = row.transpose();
    }
  }
  return out;
}

Embedding spectral_embedding(const HeteroGraph& g, const TypedGraphletSignature& sig, int dim,
                             const SpectralOptions& opt) {
  return spectral_embedding(MotifMatrix(g, sig), dim, opt);
}

void write_embedding(std::ostream& out, const Embedding& e) {
  out << e.z.rows() << ' ' << e.z.cols() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < e.z.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.z.cols(); ++j) {
      if (j) out << ' ';
      out << e.z(i, j);
    }
    out << '\n';
  }
}

double approximation_factor(double lambda2, int edge_count) {
  if (!(lambda2 > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(8.0 / lambda2) * edge_count;
}

GraphletRanking rank_typed_graphlets(const HeteroGraph& g, std::span<const TypedGraphletSignature> sigs,
                                     const SpectralOptions& opt) {
  GraphletRanking out;
  for (const auto& sig : sigs) {
    const MotifMatrix mm(g, sig);
    if (mm.instance_count() == 0) {
      out.absent.push_back(sig);
      continue;
    }
    auto comps = eligible_components(mm);
    const auto largest = std::max_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
      return a.size() < b.size();
    });
    const auto lap = normalized_laplacian<double>(mm.graph(), std::span<const NodeId>(*largest));
    const auto pairs = smallest_eigenpairs<double>(lap.matrix, 2, opt.eigen);
    RankedGraphlet r;
    r.signature = sig;
    r.lambda2 = pairs.values[1];
    r.edge_count = sig.edge_count();
    r.beta = approximation_factor(r.lambda2, r.edge_count);
    r.instances = mm.instance_count();
    out.ranked.push_back(std::move(r));
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const RankedGraphlet& a, const RankedGraphlet& b) { return a.beta < b.beta; });
  return out;
}

std::vector<TypedGraphletSignature> occurring_signatures(const HeteroGraph& g, std::span<const Skeleton> skeletons,
                                                         TypeGrouping grouping) {
  std::vector<TypedGraphletSignature> out;
  for (const auto& [sig, count] : census(g, skeletons, grouping)) {
    if (count > 0) out.push_back(sig);
  }
  return out;
}

}  // namespace tgsc
