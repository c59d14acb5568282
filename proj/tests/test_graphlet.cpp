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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "support/check.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "tgsc/graphlet.hpp"

using namespace tgsc;
using tgsc::testing::error_code_of;

namespace {

// Automorphisms of a small pattern by trying every permutation.
int count_automorphisms(const SkeletonInfo& info) {
  std::vector<int> p(info.node_count);
  std::iota(p.begin(), p.end(), 0);
  std::set<std::pair<int, int>> edges;
  for (const auto& [a, b] : info.edges) edges.insert({std::min(a, b), std::max(a, b)});
  int count = 0;
  do {
    bool ok = true;
    for (const auto& [a, b] : info.edges) {
      ok = ok && edges.contains({std::min(p[a], p[b]), std::max(p[a], p[b])});
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

std::set<std::vector<NodeId>> node_sets(const std::vector<GraphletInstance>& instances) {
  std::set<std::vector<NodeId>> out;
  for (const auto& inst : instances) out.insert({inst.nodes().begin(), inst.nodes().end()});
  return out;
}

HeteroGraph typed_cycle() {
  // U-M-U-M around the cycle 0-1-2-3.
  return HeteroGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {1, 0, 1, 0}, {0, 0, 0, 0}, {"M", "U"}, {"_"});
}

}  // namespace

TEST_CASE("skeleton catalog") {
  const std::vector<std::pair<Skeleton, int>> edges = {
      {Skeleton::kWedge, 2},    {Skeleton::kTriangle, 3},       {Skeleton::kFourPath, 3},
      {Skeleton::kFourStar, 3}, {Skeleton::kFourCycle, 4},      {Skeleton::kTailedTriangle, 4},
      {Skeleton::kDiamond, 5},  {Skeleton::kFourClique, 6}};
  CHECK(catalog_skeletons().size() == 8);
  for (const auto& [s, m] : edges) {
    const SkeletonInfo& info = skeleton_info(s);
    CHECK(info.edge_count() == m);
    CHECK(info.automorphisms == count_automorphisms(info));
    CHECK(parse_skeleton(info.name) == s);
    CHECK(to_string(s) == info.name);
  }
  CHECK(skeleton_info(Skeleton::kEdge).edge_count() == 1);
  CHECK(parse_skeleton("3-path") == Skeleton::kWedge);
  CHECK(parse_skeleton("chordal-cycle") == Skeleton::kDiamond);
  CHECK(!parse_skeleton("pentagon"));
}

TEST_CASE("K3 instances are induced") {
  const HeteroGraph k3 = tgsc::testing::clique_union({3});
  CHECK(enumerate_instances(k3, Skeleton::kTriangle).size() == 1);
  CHECK(enumerate_instances(k3, Skeleton::kWedge).empty());
  const HeteroGraph k4 = tgsc::testing::clique_union({4});
  CHECK(enumerate_instances(k4, Skeleton::kFourClique).size() == 1);
  CHECK(enumerate_instances(k4, Skeleton::kDiamond).empty());
  CHECK(brute_force_instances(k4, Skeleton::kFourClique).size() == 1);
  CHECK(brute_force_instances(k4, Skeleton::kDiamond).empty());
}

TEST_CASE("typed 4-cycle") {
  const HeteroGraph g = typed_cycle();
  CHECK(enumerate_instances(g, Skeleton::kFourCycle).size() == 1);
  CHECK(enumerate_instances(g, Skeleton::kFourPath).empty());
  CHECK(brute_force_instances(g, Skeleton::kFourCycle).size() == 1);
}

TEST_CASE("brute force on empty graphs and the guard") {
  const HeteroGraph empty = tgsc::testing::plain_graph(5, {});
  for (Skeleton s : catalog_skeletons()) CHECK(brute_force_instances(empty, s).empty());
  const HeteroGraph big = tgsc::testing::plain_graph(65, {});
  CHECK(error_code_of([&] { brute_force_instances(big, Skeleton::kWedge); }) == ErrorCode::kGuardExceeded);
}

TEST_CASE("fast enumeration equals brute force") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> size(4, 16);
  std::uniform_real_distribution<double> dens(0.1, 0.6);
  for (int trial = 0; trial < 40; ++trial) {
    const HeteroGraph g = tgsc::testing::random_typed_graph(size(rng), 2, dens(rng), rng);
    for (Skeleton s : {Skeleton::kEdge, Skeleton::kWedge, Skeleton::kTriangle, Skeleton::kFourPath,
                       Skeleton::kFourStar, Skeleton::kFourCycle, Skeleton::kTailedTriangle, Skeleton::kDiamond,
                       Skeleton::kFourClique}) {
      const auto fast = enumerate_instances(g, s);
      const auto slow = brute_force_instances(g, s);
      CHECK(node_sets(fast) == node_sets(slow));
      CHECK(fast.size() == node_sets(fast).size());
      CHECK(std::is_sorted(fast.begin(), fast.end()));
      for (const auto& inst : fast) {
        CHECK(inst.skeleton == s);
        CHECK(classify_induced(g, inst.nodes()) == s);
        for (const auto& e : instance_edges(g, inst)) CHECK(g.has_edge(e[0], e[1]));
      }
    }
  }
}

TEST_CASE("census on the typed path") {
  const HeteroGraph g = parse_typed_edge_list("a b U M e\nb c M U e\n");
  const Census c = census(g, catalog_skeletons());
  REQUIRE(c.size() == 1);
  CHECK(render(g, c.begin()->first) == "wedge[M,U,U]");
  CHECK(c.begin()->second == 1);
}

TEST_CASE("single type gives one signature per occurring skeleton") {
  std::mt19937_64 rng(4);
  const HeteroGraph g = tgsc::testing::random_typed_graph(12, 1, 0.4, rng);
  const Census c = census(g, catalog_skeletons());
  std::set<Skeleton> seen;
  for (const auto& [sig, count] : c) {
    CHECK(seen.insert(sig.skeleton).second);
    CHECK(count == static_cast<std::int64_t>(enumerate_instances(g, sig.skeleton).size()));
  }
}

TEST_CASE("census totals match the oracle per signature") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const HeteroGraph g = tgsc::testing::random_typed_graph(10, 2, 0.45, rng);
    for (TypeGrouping grouping : {TypeGrouping::kMultiset, TypeGrouping::kSet, TypeGrouping::kStrict}) {
      const Census c = census(g, catalog_skeletons(), grouping);
      Census oracle;
      for (Skeleton s : catalog_skeletons()) {
        for (const auto& inst : brute_force_instances(g, s)) ++oracle[signature_of(g, inst, grouping)];
      }
      CHECK(c == oracle);
      for (Skeleton s : catalog_skeletons()) {
        std::int64_t total = 0;
        for (const auto& [sig, count] : c) total += sig.skeleton == s ? count : 0;
        CHECK(total == static_cast<std::int64_t>(brute_force_instances(g, s).size()));
      }
    }
  }
}

TEST_CASE("six types give 56 typed triangles") {
  // One triangle per size-3 multiset over 6 types, disjoint.
  std::vector<Edge> edges;
  std::vector<TypeId> types;
  for (int a = 0; a < 6; ++a) {
    for (int b = a; b < 6; ++b) {
      for (int c = b; c < 6; ++c) {
        const NodeId base = static_cast<NodeId>(types.size());
        types.insert(types.end(), {a, b, c});
        edges.insert(edges.end(), {{base, base + 1}, {base, base + 2}, {base + 1, base + 2}});
      }
    }
  }
  const auto n = static_cast<int>(types.size());
  const auto m = edges.size();
  const HeteroGraph g(n, edges, types, std::vector<TypeId>(m, 0), tgsc::testing::type_names(6), {"_"});
  const std::array<Skeleton, 1> tri{Skeleton::kTriangle};
  CHECK(census(g, tri).size() == 56);
  CHECK(census(g, tri, TypeGrouping::kSet).size() == 41);
}

TEST_CASE("grouping modes on wedges") {
  // Center M with U ends, and center U with ends M and U.
  const HeteroGraph g = parse_typed_edge_list("a b U M\nb c M U\nx y M U\ny z U U\n");
  const std::array<Skeleton, 1> wedge{Skeleton::kWedge};
  CHECK(census(g, wedge, TypeGrouping::kMultiset).size() == 1);
  CHECK(census(g, wedge, TypeGrouping::kStrict).size() == 2);
  CHECK(census(g, wedge, TypeGrouping::kSet).size() == 1);

  const auto center_m = parse_signature(g, "wedge:M,U,U", TypeGrouping::kStrict);
  const auto center_u = parse_signature(g, "wedge:U,M,U", TypeGrouping::kStrict);
  CHECK(center_m != center_u);
  CHECK(enumerate_typed_instances(g, center_m).size() == 1);
  CHECK(enumerate_typed_instances(g, center_u).size() == 1);
  CHECK(parse_signature(g, "wedge:U,U,M", TypeGrouping::kStrict) == center_u);
}

TEST_CASE("strict signatures are invariant under relabeling") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const HeteroGraph g = tgsc::testing::random_typed_graph(9, 3, 0.5, rng, 2);
    std::vector<NodeId> order(9);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const HeteroGraph h = permute(g, order);
    CHECK(census(g, catalog_skeletons(), TypeGrouping::kStrict) ==
          census(h, catalog_skeletons(), TypeGrouping::kStrict));
  }
}

TEST_CASE("signature parsing and rendering") {
  const HeteroGraph g = parse_typed_edge_list("a b U M e\nb c M U f\n");
  const auto sig = parse_signature(g, "wedge:U,U,M|f,e");
  CHECK(render(g, sig) == "wedge[M,U,U|e,f]");
  CHECK(error_code_of([&] { parse_signature(g, "wedge:U,U,M"); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { parse_signature(g, "wedge:U,U|e,f"); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { parse_signature(g, "wedge:U,U,X|e,f"); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { parse_signature(g, "blob:U,U,M|e,f"); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { parse_signature(g, "wedge"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("per-edge instance counts") {
  const HeteroGraph k3 = tgsc::testing::clique_union({3});
  const auto tri = parse_signature(k3, "triangle:U,U,U");
  const auto w = per_edge_instance_counts(k3, tri);
  CHECK(w.coeff(0, 1) == 1);
  CHECK(w.coeff(0, 2) == 1);
  CHECK(w.coeff(1, 2) == 1);

  const HeteroGraph path = parse_typed_edge_list("a b U M\nb c M U\n");
  const auto wp = per_edge_instance_counts(path, parse_signature(path, "wedge:U,M,U"));
  CHECK(wp.coeff(0, 1) == 1);
  CHECK(wp.coeff(1, 2) == 1);
  CHECK(wp.coeff(0, 2) == 0);

  const HeteroGraph bowtie = tgsc::testing::plain_graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  const auto wb = per_edge_instance_counts(bowtie, parse_signature(bowtie, "triangle:U,U,U"));
  CHECK(wb.coeff(1, 2) == 2);
  CHECK(wb.coeff(0, 1) == 1);
  CHECK(wb.coeff(2, 3) == 1);
}

TEST_CASE("per-edge counts match the dense oracle and are permutation equivariant") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const HeteroGraph g = tgsc::testing::random_typed_graph(11, 2, 0.45, rng);
    std::vector<NodeId> order(11);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const HeteroGraph h = permute(g, order);
    for (const auto& [sig, count] : census(g, catalog_skeletons())) {
      const Eigen::MatrixXd oracle = tgsc::testing::dense_motif_weights(g, sig);
      const Eigen::MatrixXd fast = Eigen::MatrixXd(per_edge_instance_counts(g, sig).cast<double>());
      CHECK(fast == oracle);
      const Eigen::MatrixXd permuted = Eigen::MatrixXd(per_edge_instance_counts(h, sig).cast<double>());
      for (int i = 0; i < 11; ++i) {
        for (int j = 0; j < 11; ++j) CHECK(permuted(i, j) == fast(order[i], order[j]));
      }
    }
  }
}
