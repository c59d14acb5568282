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

#include <random>
#include <set>

#include "support/check.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "tgsc/evaluation.hpp"

using namespace tgsc;
using tgsc::testing::error_code_of;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Each node's neighbor list with positions as ids, re-encoded from scratch.
std::int64_t reference_codec(const HeteroGraph& g, const std::vector<NodeId>& order) {
  const int n = g.node_count();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  auto bytes = [](std::uint64_t x) {
    int b = 1;
    while (x >= 128) {
      x >>= 7;
      ++b;
    }
    return b;
  };
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> adj;
    for (NodeId w : g.neighbors(order[i])) adj.push_back(pos[w]);
    std::sort(adj.begin(), adj.end());
    total += bytes(adj.size());
    for (std::size_t k = 0; k < adj.size(); ++k) {
      if (k == 0) {
        const std::int64_t d = adj[0] - i;
        total += bytes(d >= 0 ? 2 * static_cast<std::uint64_t>(d) : 2 * static_cast<std::uint64_t>(-d) - 1);
      } else {
        total += bytes(static_cast<std::uint64_t>(adj[k] - adj[k - 1] - 1));
      }
    }
  }
  return total;
}

std::vector<NodeId> shuffled(int n, std::mt19937_64& rng) {
  std::vector<NodeId> o(n);
  std::iota(o.begin(), o.end(), 0);
  std::shuffle(o.begin(), o.end(), rng);
  return o;
}

}  // namespace

TEST_CASE("external conductance") {
  CHECK(external_conductance(tgsc::testing::barbell(), NodeSet(6, {0, 1, 2})) == doctest::Approx(1.0 / 7.0));
  const HeteroGraph two = tgsc::testing::clique_union({3, 4});
  CHECK(external_conductance(two, NodeSet(7, {0, 1, 2})) == 0.0);
  CHECK(error_code_of([&] { external_conductance(two, NodeSet(7)); }) == ErrorCode::kDegenerateCut);
}

TEST_CASE("edge split") {
  const HeteroGraph g =
      tgsc::testing::plain_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}, {0, 4}, {2, 6}});
  const EdgeDataset a = split_edges(g, 0.5, 42);
  CHECK(a.positives.size() == 5);
  CHECK(a.negatives.size() == 5);
  CHECK(a.train.edge_count() == 5);
  for (const Edge& e : a.positives) {
    CHECK(g.has_edge(e.u, e.v));
    CHECK(!a.train.has_edge(e.u, e.v));
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : a.negatives) {
    CHECK(!g.has_edge(e.u, e.v));
    CHECK(e.u != e.v);
    CHECK(seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second);
  }
  const EdgeDataset b = split_edges(g, 0.5, 42);
  CHECK(b.positives == a.positives);
  CHECK(b.negatives == a.negatives);
  CHECK(b.train == a.train);
  CHECK(split_edges(g, 0.3, 1).positives.size() == 3);

  CHECK(error_code_of([&] { split_edges(g, 0.0, 1); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { split_edges(g, 1.0, 1); }) == ErrorCode::kInvalidArgument);
  const HeteroGraph k4 = tgsc::testing::clique_union({4});
  CHECK(error_code_of([&] { split_edges(k4, 0.5, 1); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("filtered split on a typed layer") {
  std::vector<Edge> edges;
  std::vector<TypeId> etypes;
  std::vector<TypeId> ntypes(12);
  for (int v = 0; v < 12; ++v) ntypes[v] = v < 6 ? 0 : 1;
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) {
      if ((u + v) % 2) {
        edges.push_back({u, v});
        etypes.push_back(0);
      }
    }
    edges.push_back({u, 6 + u});
    etypes.push_back(1);
    if (u + 7 < 12) {
      edges.push_back({u, 7 + u});
      etypes.push_back(1);
    }
  }
  const HeteroGraph g(12, edges, ntypes, etypes, {"P", "Q"}, {"pp", "pq"});
  auto count = [](const HeteroGraph& h, TypeId t) {
    int c = 0;
    for (int i = 0; i < h.edge_count(); ++i) c += h.edge_type(i) == t;
    return c;
  };
  const EdgeDataset d = split_edges(g, 0.5, 9, TypeId{1});
  CHECK(count(d.train, 0) == count(g, 0));
  CHECK(count(d.train, 1) == count(g, 1) - 6);
  for (const Edge& e : d.negatives) CHECK(g.node_type(e.u) != g.node_type(e.v));
  for (const Edge& e : d.positives) CHECK(g.edge_type(g.edge_index(e.u, e.v)) == 1);

  CHECK(error_code_of([&] { split_edges(g, 0.5, 9, TypeId{5}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("edge operators") {
  const Eigen::VectorXd a = vec({1, 2});
  const Eigen::VectorXd b = vec({3, 4});
  CHECK(edge_embed(a, b, "mean") == vec({2, 3}));
  CHECK(edge_embed(a, b, "hadamard") == vec({3, 8}));
  CHECK(edge_embed(a, b, "absdiff") == vec({2, 2}));
  CHECK(edge_embed(a, b, "squared-diff") == vec({4, 4}));
  CHECK(edge_embed(a, b, "max") == vec({3, 4}));
  CHECK(edge_embed(a, b, "sum") == vec({4, 6}));
  CHECK(error_code_of([&] { edge_embed(a, vec({1}), "mean"); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] { edge_embed(a, b, "concat"); }) == ErrorCode::kInvalidArgument);
  CHECK(all_edge_operators().size() == 6);
  for (EdgeOperator op : all_edge_operators()) CHECK(parse_edge_operator(to_string(op)) == op);

  std::mt19937_64 rng(103);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x(5), y(5);
    for (int i = 0; i < 5; ++i) {
      x[i] = gauss(rng);
      y[i] = gauss(rng);
    }
    for (EdgeOperator op : all_edge_operators()) CHECK(edge_embed(x, y, op) == edge_embed(y, x, op));
  }
}

TEST_CASE("classifier examples") {
  Eigen::MatrixXd x(2, 1);
  x << -1, 1;
  const std::vector<int> y{0, 1};
  const LinearClassifier c = train_linear_classifier(x, y);
  CHECK(c.weights[0] > 0);
  CHECK(c.score(x.row(0).transpose()) < 0.5);
  CHECK(c.score(x.row(1).transpose()) > 0.5);

  const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(4, 3);
  const std::vector<int> half{0, 1, 0, 1};
  const LinearClassifier z = train_linear_classifier(zeros, half);
  CHECK(z.weights.norm() == 0.0);
  CHECK(z.score(zeros.row(0).transpose()) == doctest::Approx(0.5));

  const std::vector<int> single{1, 1};
  CHECK(error_code_of([&] { train_linear_classifier(x, single); }) == ErrorCode::kInvalidArgument);
  const std::vector<int> short_y{1};
  CHECK(error_code_of([&] { train_linear_classifier(x, short_y); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("classifier converges and its loss never rises") {
  std::mt19937_64 rng(107);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni;
  const int n = 200, d = 4;
  Eigen::MatrixXd x(n, d);
  std::vector<int> y(n);
  const Eigen::VectorXd truth = vec({1.0, -0.5, 0.25, 0.0});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = gauss(rng);
    y[i] = uni(rng) < 1.0 / (1.0 + std::exp(-x.row(i).dot(truth))) ? 1 : 0;
  }
  const LinearClassifier c = train_linear_classifier(x, y);
  for (std::size_t i = 1; i < c.loss_history.size(); ++i) CHECK(c.loss_history[i] <= c.loss_history[i - 1]);

  ClassifierOptions longer;
  longer.iterations = 20000;
  const LinearClassifier full = train_linear_classifier(x, y, longer);
  Eigen::VectorXd grad;
  const double f = logistic_objective(x, y, full.weights, full.bias, longer.l2, &grad);
  CHECK(grad.norm() <= 1e-4);

  for (int probe = 0; probe < 5; ++probe) {
    Eigen::VectorXd w0(d);
    for (int j = 0; j < d; ++j) w0[j] = gauss(rng);
    const double b0 = gauss(rng);
    Eigen::VectorXd g0;
    logistic_objective(x, y, w0, b0, longer.l2, &g0);
    const double h = 1e-6;
    for (int j = 0; j <= d; ++j) {
      Eigen::VectorXd w = w0;
      double b = b0;
      (j < d ? w[j] : b) += h;
      const double up = logistic_objective(x, y, w, b, longer.l2);
      (j < d ? w[j] : b) -= 2 * h;
      const double down = logistic_objective(x, y, w, b, longer.l2);
      CHECK(std::abs((up - down) / (2 * h) - g0[j]) <= 1e-7);
    }
  }
  CHECK(f <= c.loss_history.back());
}

TEST_CASE("metrics examples") {
  const std::vector<double> perfect{0.9, 0.8, 0.2, 0.1};
  const std::vector<int> labels{1, 1, 0, 0};
  const MetricsReport p = compute_metrics(perfect, labels);
  CHECK(p.f1 == 1.0);
  CHECK(p.precision == 1.0);
  CHECK(p.recall == 1.0);
  CHECK(p.auc == 1.0);

  const std::vector<double> flat{0.4, 0.4, 0.4, 0.4};
  CHECK(compute_metrics(flat, labels).auc == 0.5);

  const std::vector<double> s3{0.9, 0.8, 0.3};
  const std::vector<int> l3{1, 0, 1};
  CHECK(compute_metrics(s3, l3).auc == 0.5);
  CHECK(tgsc::testing::pairwise_auc(s3, l3) == 0.5);

  const std::vector<int> ones{1, 1, 1};
  const MetricsReport single = compute_metrics(s3, ones);
  CHECK(!single.auc.has_value());
  CHECK(single.recall == doctest::Approx(2.0 / 3.0));
  CHECK(single.precision == 1.0);
}

TEST_CASE("metrics agree with the pair-counting oracle") {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> len(2, 100);
  std::uniform_int_distribution<int> level(0, 9);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = len(rng);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
      s[i] = level(rng) / 9.0;
      y[i] = coin(rng);
    }
    if (std::count(y.begin(), y.end(), 1) == 0 || std::count(y.begin(), y.end(), 0) == 0) continue;
    const MetricsReport r = compute_metrics(s, y);
    REQUIRE(r.auc.has_value());
    CHECK(*r.auc == doctest::Approx(tgsc::testing::pairwise_auc(s, y)).epsilon(1e-12));
    int tp = 0, fp = 0, fn = 0;
    for (int i = 0; i < n; ++i) {
      const bool pred = s[i] >= 0.5;
      tp += pred && y[i];
      fp += pred && !y[i];
      fn += !pred && y[i];
    }
    const double prec = tp + fp ? static_cast<double>(tp) / (tp + fp) : 0.0;
    const double rec = static_cast<double>(tp) / (tp + fn);
    CHECK(r.precision == doctest::Approx(prec));
    CHECK(r.recall == doctest::Approx(rec));
    if (prec > 0 && rec > 0) CHECK(r.f1 == doctest::Approx(2 * prec * rec / (prec + rec)));
  }
}

TEST_CASE("codec arithmetic") {
  CHECK(varint_size(0) == 1);
  CHECK(varint_size(127) == 1);
  CHECK(varint_size(128) == 2);
  CHECK(varint_size(16383) == 2);
  CHECK(varint_size(16384) == 3);
  CHECK(zigzag(0) == 0);
  CHECK(zigzag(-1) == 1);
  CHECK(zigzag(1) == 2);
  CHECK(zigzag(-2) == 3);

  const HeteroGraph empty = tgsc::testing::plain_graph(5, {});
  const std::vector<NodeId> id5{0, 1, 2, 3, 4};
  CHECK(compressed_size_estimate(empty, id5) == 5);
  const HeteroGraph p3 = tgsc::testing::plain_graph(3, {{0, 1}, {1, 2}});
  const std::vector<NodeId> id3{0, 1, 2};
  CHECK(compressed_size_estimate(p3, id3) == 7);
  const std::vector<NodeId> bad{0, 0, 1};
  CHECK(error_code_of([&] { compressed_size_estimate(p3, bad); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("codec matches a reference encoder and permutes consistently") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    const HeteroGraph g = tgsc::testing::random_typed_graph(300, 2, 0.05, rng);
    const std::vector<NodeId> pi = shuffled(300, rng);
    const std::int64_t bytes = compressed_size_estimate(g, pi);
    CHECK(bytes == reference_codec(g, pi));
    std::vector<NodeId> id(300);
    std::iota(id.begin(), id.end(), 0);
    CHECK(bytes == compressed_size_estimate(permute(g, pi), id));
  }
}

TEST_CASE("mean and standard deviation") {
  const std::vector<double> v{1, 2, 3, 4};
  const MeanStd m = mean_std(v);
  CHECK(m.mean == 2.5);
  CHECK(m.stddev == doctest::Approx(std::sqrt(1.25)));
}

TEST_CASE("link prediction pipeline is deterministic") {
  std::mt19937_64 rng(127);
  const auto planted = tgsc::testing::planted_partition(2, 40, 0.3, 0.02, 2, rng);
  const HeteroGraph& g = planted.graph;
  LinkPredictionConfig cfg{parse_signature(g, "wedge:A,A,B")};
  cfg.dim = 4;
  cfg.seed = 5;
  const LinkPredictionReport a = link_prediction(g, cfg);
  const LinkPredictionReport b = link_prediction(g, cfg);
  REQUIRE(a.results.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.results[i].op == all_edge_operators()[i]);
    CHECK(a.results[i].metrics.auc == b.results[i].metrics.auc);
    CHECK(a.results[i].metrics.f1 == b.results[i].metrics.f1);
    const OperatorResult one = link_prediction(g, cfg, a.results[i].op);
    CHECK(one.metrics.auc == a.results[i].metrics.auc);
  }
  CHECK(a.best == b.best);
  for (const OperatorResult& r : a.results) CHECK(*r.metrics.auc <= *a.best_result().metrics.auc);
  CHECK(a.train_examples + a.test_examples == 2 * static_cast<int>(std::ceil(0.5 * g.edge_count() - 1e-9)));
}
