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

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgsc/graph.hpp"
#include "tgsc/graphlet.hpp"
#include "tgsc/spectral.hpp"

namespace tgsc {

/// Plain edge conductance of s in g. Throws kDegenerateCut for an empty
/// side and kUndefinedMeasure when one side has no edges.
double external_conductance(const HeteroGraph& g, const NodeSet& s);

struct EdgeDataset {
  HeteroGraph train;             // g without the positives
  std::vector<Edge> positives;   // removed edges, canonical
  std::vector<Edge> negatives;   // non-edges of g, one per positive
  std::uint64_t seed = 0;
};

/// Removes ceil(fraction * |E_t|) edges of the filtered type uniformly at
/// random. Each positive (u, v) gets a negative (x, y) with the same
/// endpoint types that is a non-edge of g and distinct from the others.
EdgeDataset split_edges(const HeteroGraph& g, double fraction, std::uint64_t seed,
                        std::optional<TypeId> edge_type = std::nullopt);

enum class EdgeOperator { kMean, kHadamard, kAbsDiff, kSquaredDiff, kMax, kSum };

std::span<const EdgeOperator> all_edge_operators();
std::string_view to_string(EdgeOperator op);
/// Accepts mean, hadamard, absdiff, squared-diff, max, sum. Throws kInvalidArgument.
EdgeOperator parse_edge_operator(std::string_view name);

Eigen::VectorXd edge_embed(const Eigen::Ref<const Eigen::VectorXd>& zi, const Eigen::Ref<const Eigen::VectorXd>& zj,
                           EdgeOperator op);
Eigen::VectorXd edge_embed(const Eigen::Ref<const Eigen::VectorXd>& zi, const Eigen::Ref<const Eigen::VectorXd>& zj,
                           std::string_view op);

struct ClassifierOptions {
  double l2 = 1e-4;
  int iterations = 500;
  double step = 0.1;
};

/// Logistic regression. The bias is not penalized.
struct LinearClassifier {
  Eigen::VectorXd weights;
  double bias = 0.0;
  std::vector<double> loss_history;  // objective before each iteration, then the final one

  double score(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd scores(const Eigen::MatrixXd& x) const;
};

/// Mean log-loss plus (l2 / 2) * ||w||^2, and its gradient (bias last).
double logistic_objective(const Eigen::MatrixXd& x, std::span<const int> y, const Eigen::VectorXd& w, double bias,
                          double l2, Eigen::VectorXd* gradient = nullptr);

/// Full-batch gradient descent from zero. A step that raises the objective
/// is rejected and the step size halved, so the loss never increases.
LinearClassifier train_linear_classifier(const Eigen::MatrixXd& x, std::span<const int> y,
                                         const ClassifierOptions& opt = {});

struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> auc;  // absent when only one class is present
  double threshold = 0.5;
};

/// Scores at or above the threshold are predicted positive. AUC is the
/// rank statistic with ties counted half.
MetricsReport compute_metrics(std::span<const double> scores, std::span<const int> labels, double threshold = 0.5);

/// Byte size of the adjacency lists under the proxy codec. order[i] is the
/// node placed at position i. Per position: varint(degree), then the first
/// neighbor as varint(zigzag(a_1 - i)), then varint(a_k - a_{k-1} - 1);
/// varints use 7 payload bits per byte.
std::int64_t compressed_size_estimate(const HeteroGraph& g, std::span<const NodeId> order);

int varint_size(std::uint64_t x);
std::uint64_t zigzag(std::int64_t x);

struct LinkPredictionConfig {
  TypedGraphletSignature signature;
  int dim = 8;
  double fraction = 0.5;
  std::uint64_t seed = 0;
  std::optional<TypeId> edge_type;
  double threshold = 0.5;
  ClassifierOptions classifier;
  SpectralOptions spectral;
};

struct OperatorResult {
  EdgeOperator op = EdgeOperator::kMean;
  MetricsReport metrics;
};

struct LinkPredictionReport {
  std::uint64_t seed = 0;
  std::vector<OperatorResult> results;  // one per operator, in all_edge_operators() order
  int best = 0;                         // index of the highest AUC, then F1; first on ties
  int train_examples = 0;
  int test_examples = 0;

  const OperatorResult& best_result() const { return results[best]; }
};

/// Split, embed the remaining graph, then train and score a classifier on
/// a seeded stratified half of the labeled pairs and evaluate on the other
/// half. Features are standardized with the training-half statistics.
LinkPredictionReport link_prediction(const HeteroGraph& g, const LinkPredictionConfig& cfg);

/// Same, for one operator only.
OperatorResult link_prediction(const HeteroGraph& g, const LinkPredictionConfig& cfg, EdgeOperator op);

/// The classifier stage alone, on a given split and embedding. Uses the
/// seed, threshold and classifier settings of cfg.
LinkPredictionReport evaluate_embedding(const EdgeDataset& ds, const Eigen::MatrixXd& z,
                                        const LinkPredictionConfig& cfg);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

MeanStd mean_std(std::span<const double> values);

}  // namespace tgsc
