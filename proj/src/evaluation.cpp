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

#include "tgsc/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "tgsc/motif_matrix.hpp"

namespace tgsc {

double external_conductance(const HeteroGraph& g, const NodeSet& s) {
  return weighted_conductance(unit_weighted(g), s);
}

namespace {

std::pair<TypeId, TypeId> type_pair(const HeteroGraph& g, NodeId u, NodeId v) {
  const TypeId a = g.node_type(u);
  const TypeId b = g.node_type(v);
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

EdgeDataset split_edges(const HeteroGraph& g, double fraction, std::uint64_t seed, std::optional<TypeId> edge_type) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "split fraction must lie strictly between 0 and 1");
  }
  std::vector<int> candidates;
  for (int i = 0; i < g.edge_count(); ++i) {
    if (!edge_type || g.edge_type(i) == *edge_type) candidates.push_back(i);
  }
  if (candidates.empty()) throw Error(ErrorCode::kInvalidArgument, "edge type filter matches no edges");
  const int count = static_cast<int>(candidates.size());
  const int k = std::clamp(static_cast<int>(std::ceil(fraction * count - 1e-9)), 1, count);

  std::mt19937_64 rng(seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::vector<int> removed(candidates.begin(), candidates.begin() + k);
  std::sort(removed.begin(), removed.end());

  EdgeDataset out;
  out.seed = seed;
  for (int i : removed) out.positives.push_back(g.edges()[i]);

  std::map<TypeId, std::vector<NodeId>> by_type;
  for (NodeId v = 0; v < g.node_count(); ++v) by_type[g.node_type(v)].push_back(v);
  std::map<std::pair<TypeId, TypeId>, std::int64_t> needed, present;
  for (const Edge& e : out.positives) ++needed[type_pair(g, e.u, e.v)];
  for (const Edge& e : g.edges()) ++present[type_pair(g, e.u, e.v)];
  for (const auto& [types, need] : needed) {
    const auto na = static_cast<std::int64_t>(by_type[types.first].size());
    const auto nb = static_cast<std::int64_t>(by_type[types.second].size());
    const std::int64_t pairs = types.first == types.second ? na * (na - 1) / 2 : na * nb;
    if (pairs - present[types] < need) {
      throw Error(ErrorCode::kInvalidArgument, "not enough non-edges to sample negatives");
    }
  }

  std::set<Edge> used;
  const auto acceptable = [&](NodeId x, NodeId y) {
    return x != y && !g.has_edge(x, y) && !used.contains(Edge{std::min(x, y), std::max(x, y)});
  };
  for (const Edge& e : out.positives) {
    const auto& xs = by_type[g.node_type(e.u)];
    const auto& ys = by_type[g.node_type(e.v)];
    std::uniform_int_distribution<std::size_t> pick_x(0, xs.size() - 1), pick_y(0, ys.size() - 1);
    std::optional<Edge> found;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      const NodeId x = xs[pick_x(rng)];
      const NodeId y = ys[pick_y(rng)];
      if (acceptable(x, y)) found = Edge{std::min(x, y), std::max(x, y)};
    }
    if (!found) {
      std::vector<Edge> pool;
      for (NodeId x : xs) {
        for (NodeId y : ys) {
          if (x < y && acceptable(x, y)) pool.push_back({x, y});
          if (g.node_type(e.u) != g.node_type(e.v) && y < x && acceptable(x, y)) pool.push_back({y, x});
        }
      }
      std::sort(pool.begin(), pool.end());
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      found = pool[pick(rng)];
    }
    used.insert(*found);
    out.negatives.push_back(*found);
  }
  out.train = remove_edges(g, removed);
  return out;
}

std::span<const EdgeOperator> all_edge_operators() {
  static constexpr std::array<EdgeOperator, 6> kAll = {EdgeOperator::kMean,        EdgeOperator::kHadamard,
                                                       EdgeOperator::kAbsDiff,     EdgeOperator::kSquaredDiff,
                                                       EdgeOperator::kMax,         EdgeOperator::kSum};
  return kAll;
}

std::string_view to_string(EdgeOperator op) {
  switch (op) {
    case EdgeOperator::kMean: return "mean";
    case EdgeOperator::kHadamard: return "hadamard";
    case EdgeOperator::kAbsDiff: return "absdiff";
    case EdgeOperator::kSquaredDiff: return "squared-diff";
    case EdgeOperator::kMax: return "max";
    case EdgeOperator::kSum: return "sum";
  }
  return "?";
}

EdgeOperator parse_edge_operator(std::string_view name) {
  for (EdgeOperator op : all_edge_operators()) {
    if (to_string(op) == name) return op;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown edge operator '" + std::string(name) + "'");
}

Eigen::VectorXd edge_embed(const Eigen::Ref<const Eigen::VectorXd>& zi, const Eigen::Ref<const Eigen::VectorXd>& zj,
                           EdgeOperator op) {
  if (zi.size() != zj.size()) throw Error(ErrorCode::kInvalidArgument, "edge embedding: dimension mismatch");
  switch (op) {
    case EdgeOperator::kMean: return (zi + zj) / 2.0;
    case EdgeOperator::kHadamard: return zi.cwiseProduct(zj);
    case EdgeOperator::kAbsDiff: return (zi - zj).cwiseAbs();
    case EdgeOperator::kSquaredDiff: return (zi - zj).array().square().matrix();
    case EdgeOperator::kMax: return zi.cwiseMax(zj);
    case EdgeOperator::kSum: return zi + zj;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown edge operator");
}

Eigen::VectorXd edge_embed(const Eigen::Ref<const Eigen::VectorXd>& zi, const Eigen::Ref<const Eigen::VectorXd>& zj,
                           std::string_view op) {
  return edge_embed(zi, zj, parse_edge_operator(op));
}

namespace {

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

}  // namespace

double LinearClassifier::score(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return sigmoid(weights.dot(x) + bias);
}

Eigen::VectorXd LinearClassifier::scores(const Eigen::MatrixXd& x) const {
  Eigen::VectorXd z = x * weights;
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = sigmoid(z[i] + bias);
  return z;
}

double logistic_objective(const Eigen::MatrixXd& x, std::span<const int> y, const Eigen::VectorXd& w, double bias,
                          double l2, Eigen::VectorXd* gradient) {
  const Eigen::Index n = x.rows();
  const Eigen::VectorXd z = (x * w).array() + bias;
  double loss = 0.0;
  Eigen::VectorXd residual(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    loss += softplus(z[i]) - y[i] * z[i];
    residual[i] = sigmoid(z[i]) - y[i];
  }
  loss = loss / static_cast<double>(n) + 0.5 * l2 * w.squaredNorm();
  if (gradient) {
    gradient->resize(w.size() + 1);
    gradient->head(w.size()) = x.transpose() * residual / static_cast<double>(n) + l2 * w;
    (*gradient)[w.size()] = residual.sum() / static_cast<double>(n);
  }
  return loss;
}

LinearClassifier train_linear_classifier(const Eigen::MatrixXd& x, std::span<const int> y,
                                         const ClassifierOptions& opt) {
  if (static_cast<Eigen::Index>(y.size()) != x.rows() || x.rows() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "classifier: feature rows and labels differ in number");
  }
  bool has0 = false, has1 = false;
  for (int label : y) {
    if (label != 0 && label != 1) throw Error(ErrorCode::kInvalidArgument, "classifier: labels must be 0 or 1");
    (label ? has1 : has0) = true;
  }
  if (!has0 || !has1) throw Error(ErrorCode::kInvalidArgument, "classifier: degenerate single-class input");

  LinearClassifier c;
  c.weights = Eigen::VectorXd::Zero(x.cols());
  double step = opt.step;
  Eigen::VectorXd grad;
  double loss = logistic_objective(x, y, c.weights, c.bias, opt.l2, &grad);
  c.loss_history.push_back(loss);
  for (int it = 0; it < opt.iterations; ++it) {
    bool accepted = false;
    while (step > 1e-12) {
      const Eigen::VectorXd w = c.weights - step * grad.head(x.cols());
      const double b = c.bias - step * grad[x.cols()];
      Eigen::VectorXd next_grad;
      const double next = logistic_objective(x, y, w, b, opt.l2, &next_grad);
      if (next <= loss) {
        c.weights = w;
        c.bias = b;
        loss = next;
        grad = std::move(next_grad);
        accepted = true;
        break;
      }
      step /= 2;
    }
    if (!accepted) break;
    c.loss_history.push_back(loss);
  }
  return c;
}

MetricsReport compute_metrics(std::span<const double> scores, std::span<const int> labels, double threshold) {
  if (scores.size() != labels.size()) throw Error(ErrorCode::kInvalidArgument, "metrics: length mismatch");
  if (scores.empty()) throw Error(ErrorCode::kInvalidArgument, "metrics: no examples");
  MetricsReport r;
  r.threshold = threshold;
  std::int64_t tp = 0, fp = 0, fn = 0, pos = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] != 0;
    pos += actual;
    tp += predicted && actual;
    fp += predicted && !actual;
    fn += !predicted && actual;
  }
  r.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;

  const auto n = static_cast<std::int64_t>(scores.size());
  const std::int64_t neg = n - pos;
  if (pos == 0 || neg == 0) return r;
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Average ranks over tie groups (1-based), doubled to stay integral.
  std::int64_t twice_rank_sum = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
    const auto twice_avg = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[idx[t]]) twice_rank_sum += twice_avg;
    }
    i = j;
  }
  const double u = (static_cast<double>(twice_rank_sum) - static_cast<double>(pos * (pos + 1))) / 2.0;
  r.auc = u / (static_cast<double>(pos) * static_cast<double>(neg));
  return r;
}

int varint_size(std::uint64_t x) {
  int bytes = 1;
  while (x >= 0x80) {
    x >>= 7;
    ++bytes;
  }
  return bytes;
}

std::uint64_t zigzag(std::int64_t x) {
  return (static_cast<std::uint64_t>(x) << 1) ^ static_cast<std::uint64_t>(x >> 63);
}

std::int64_t compressed_size_estimate(const HeteroGraph& g, std::span<const NodeId> order) {
  if (static_cast<int>(order.size()) != g.node_count()) {
    throw Error(ErrorCode::kInvalidArgument, "ordering length differs from the node count");
  }
  const std::vector<NodeId> position = inverse_permutation(order);
  std::int64_t bytes = 0;
  std::vector<std::int64_t> adj;
  for (int i = 0; i < g.node_count(); ++i) {
    const NodeId v = order[i];
    adj.clear();
    for (NodeId w : g.neighbors(v)) adj.push_back(position[w]);
    std::sort(adj.begin(), adj.end());
    bytes += varint_size(adj.size());
    for (std::size_t k = 0; k < adj.size(); ++k) {
      bytes += k == 0 ? varint_size(zigzag(adj[0] - i)) : varint_size(adj[k] - adj[k - 1] - 1);
    }
  }
  return bytes;
}

namespace {

struct Labeled {
  Edge pair;
  int label;
};

Eigen::MatrixXd features(const Eigen::MatrixXd& z, const std::vector<Labeled>& rows, EdgeOperator op) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), z.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(i) = edge_embed(z.row(rows[i].pair.u).transpose(), z.row(rows[i].pair.v).transpose(), op).transpose();
  }
  return x;
}

struct Prepared {
  Eigen::MatrixXd z;
  std::vector<Labeled> train;
  std::vector<Labeled> test;
};

Prepared prepare(const EdgeDataset& ds, const Eigen::MatrixXd& z, std::uint64_t seed) {
  Prepared p;
  p.z = z;
  std::vector<Labeled> pos, neg;
  for (const Edge& e : ds.positives) pos.push_back({e, 1});
  for (const Edge& e : ds.negatives) neg.push_back({e, 0});
  if (pos.size() < 2) throw Error(ErrorCode::kInvalidArgument, "link prediction needs at least two held-out edges");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (auto* group : {&pos, &neg}) {
    std::shuffle(group->begin(), group->end(), rng);
    const std::size_t half = (group->size() + 1) / 2;
    p.train.insert(p.train.end(), group->begin(), group->begin() + static_cast<std::ptrdiff_t>(half));
    p.test.insert(p.test.end(), group->begin() + static_cast<std::ptrdiff_t>(half), group->end());
  }
  return p;
}

Prepared prepare(const HeteroGraph& g, const LinkPredictionConfig& cfg) {
  const EdgeDataset ds = split_edges(g, cfg.fraction, cfg.seed, cfg.edge_type);
  const MotifMatrix mm(ds.train, cfg.signature);
  if (mm.instance_count() == 0) {
    throw Error(ErrorCode::kGraphletAbsent, "graphlet absent from the training graph");
  }
  return prepare(ds, spectral_embedding(mm, cfg.dim, cfg.spectral).z, cfg.seed);
}

OperatorResult evaluate(const Prepared& p, const LinkPredictionConfig& cfg, EdgeOperator op) {
  Eigen::MatrixXd xtrain = features(p.z, p.train, op);
  Eigen::MatrixXd xtest = features(p.z, p.test, op);
  const Eigen::RowVectorXd mean = xtrain.colwise().mean();
  Eigen::RowVectorXd scale = ((xtrain.rowwise() - mean).array().square().colwise().mean()).sqrt();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (!(scale[j] > 1e-12)) scale[j] = 1.0;
  }
  xtrain = (xtrain.rowwise() - mean).array().rowwise() / scale.array();
  xtest = (xtest.rowwise() - mean).array().rowwise() / scale.array();

  std::vector<int> ytrain, ytest;
  for (const Labeled& l : p.train) ytrain.push_back(l.label);
  for (const Labeled& l : p.test) ytest.push_back(l.label);
  const LinearClassifier clf = train_linear_classifier(xtrain, ytrain, cfg.classifier);
  const Eigen::VectorXd s = clf.scores(xtest);
  OperatorResult r;
  r.op = op;
  r.metrics = compute_metrics(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())), ytest,
                              cfg.threshold);
  return r;
}

}  // namespace

namespace {

LinkPredictionReport report_for(const Prepared& p, const LinkPredictionConfig& cfg) {
  LinkPredictionReport report;
  report.seed = cfg.seed;
  report.train_examples = static_cast<int>(p.train.size());
  report.test_examples = static_cast<int>(p.test.size());
  for (EdgeOperator op : all_edge_operators()) report.results.push_back(evaluate(p, cfg, op));
  for (int i = 1; i < static_cast<int>(report.results.size()); ++i) {
    const MetricsReport& a = report.results[i].metrics;
    const MetricsReport& b = report.results[report.best].metrics;
    const double auc_a = a.auc.value_or(-1.0);
    const double auc_b = b.auc.value_or(-1.0);
    if (auc_a > auc_b || (auc_a == auc_b && a.f1 > b.f1)) report.best = i;
  }
  return report;
}

}  // namespace

LinkPredictionReport link_prediction(const HeteroGraph& g, const LinkPredictionConfig& cfg) {
  return report_for(prepare(g, cfg), cfg);
}

LinkPredictionReport evaluate_embedding(const EdgeDataset& ds, const Eigen::MatrixXd& z,
                                        const LinkPredictionConfig& cfg) {
  if (z.rows() != ds.train.node_count()) {
    throw Error(ErrorCode::kInvalidArgument, "embedding rows differ from the node count");
  }
  return report_for(prepare(ds, z, cfg.seed), cfg);
}

OperatorResult link_prediction(const HeteroGraph& g, const LinkPredictionConfig& cfg, EdgeOperator op) {
  return evaluate(prepare(g, cfg), cfg, op);
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd r;
  if (values.empty()) return r;
  for (double v : values) r.mean += v;
  r.mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.stddev = std::sqrt(ss / static_cast<double>(values.size()));
  return r;
}

}  // namespace tgsc
