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

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tgsc/evaluation.hpp"
#include "tgsc/graph.hpp"
#include "tgsc/graphlet.hpp"
#include "tgsc/motif_matrix.hpp"
#include "tgsc/spectral.hpp"

namespace {

using namespace tgsc;

struct RunConfig {
  std::string command;
  std::string input;
  std::string motif;
  std::vector<std::string> skeletons;
  int dim = 8;
  int k = 2;
  std::uint64_t seed = 0;
  int seeds = 1;
  int trials = 10;
  double fraction = 0.5;
  std::string op;
  std::string edge_type;
  bool strict_types = false;
  bool drop_trivial = false;
  bool oracle_check = false;
  bool records = false;
  int threads = 1;
  std::string output_dir;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

// Writes to <output-dir>/<name> when an output directory is set, else stdout.
class Sink {
 public:
  Sink(const RunConfig& cfg, const std::string& name) {
    if (cfg.output_dir.empty()) return;
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = std::filesystem::path(cfg.output_dir) / name;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

TypeGrouping grouping(const RunConfig& cfg) {
  return cfg.strict_types ? TypeGrouping::kStrict : TypeGrouping::kMultiset;
}

SpectralOptions spectral_options(const RunConfig& cfg) {
  SpectralOptions opt;
  opt.drop_trivial = cfg.drop_trivial;
  return opt;
}

std::vector<Skeleton> skeleton_list(const RunConfig& cfg) {
  std::vector<Skeleton> out;
  if (cfg.skeletons.empty()) {
    const auto all = catalog_skeletons();
    return {all.begin(), all.end()};
  }
  for (const std::string& name : cfg.skeletons) {
    const auto s = parse_skeleton(name);
    if (!s) throw Error(ErrorCode::kInvalidArgument, "unknown skeleton '" + name + "'");
    out.push_back(*s);
  }
  return out;
}

TypedGraphletSignature resolve_motif(const HeteroGraph& g, const RunConfig& cfg) {
  if (cfg.motif.empty()) throw Error(ErrorCode::kInvalidArgument, cfg.command + " requires --motif");
  if (cfg.motif != "best") return parse_signature(g, cfg.motif, grouping(cfg));
  const auto skels = skeleton_list(cfg);
  const auto sigs = occurring_signatures(g, skels, grouping(cfg));
  const GraphletRanking ranking = rank_typed_graphlets(g, sigs, spectral_options(cfg));
  if (ranking.ranked.empty()) throw Error(ErrorCode::kGraphletAbsent, "no typed graphlet occurs in the graph");
  std::cerr << "motif: " << render(g, ranking.ranked.front().signature) << '\n';
  return ranking.ranked.front().signature;
}

void write_ids(std::ostream& out, const HeteroGraph& g, std::span<const NodeId> nodes) {
  for (NodeId v : nodes) out << g.external_id(v) << '\n';
}

int run_census(const RunConfig& cfg, const HeteroGraph& g) {
  const auto skels = skeleton_list(cfg);
  const Census c = census(g, skels, grouping(cfg));
  Sink sink(cfg, cfg.records ? "census.jsonl" : "census.txt");
  for (const auto& [sig, count] : c) {
    if (cfg.records) {
      nlohmann::ordered_json rec;
      rec["skeleton"] = std::string(to_string(sig.skeleton));
      rec["signature"] = render(g, sig);
      rec["count"] = count;
      sink.out() << rec.dump() << '\n';
    } else {
      sink.out() << to_string(sig.skeleton) << ' ' << render(g, sig) << ' ' << count << '\n';
    }
  }
  return 0;
}

int run_cluster(const RunConfig& cfg, const HeteroGraph& g) {
  const TypedGraphletSignature sig = resolve_motif(g, cfg);
  const MotifMatrix mm(g, sig);
  const ClusterResult r = cluster(mm, spectral_options(cfg));
  std::ostringstream summary;
  summary << "component=" << r.component << " k=" << r.best_k << " phi_weighted=" << fmt(r.phi_weighted)
          << " alpha_typed=" << fmt(r.alpha_typed) << " lambda2=" << fmt(r.lambda2) << " beta=" << fmt(r.beta);
  {
    Sink sink(cfg, "cluster.txt");
    write_ids(sink.out(), g, r.cluster);
  }
  if (!cfg.output_dir.empty()) {
    Sink profile(cfg, "profile.txt");
    for (std::size_t k = 0; k < r.sweep.profile.size(); ++k) {
      profile.out() << k + 1 << ' ' << fmt(r.sweep.profile[k]) << '\n';
    }
    Sink s(cfg, "summary.txt");
    s.out() << summary.str() << '\n';
  }
  std::cout << summary.str() << '\n';
  if (cfg.oracle_check) {
    const CutOptimum best = brute_force_min_conductance(mm);
    std::cout << "oracle phi_typed=" << fmt(best.value) << '\n';
  }
  return 0;
}

int run_partition(const RunConfig& cfg, const HeteroGraph& g) {
  const TypedGraphletSignature sig = resolve_motif(g, cfg);
  const Partition p = recursive_bipartition(g, sig, cfg.k, spectral_options(cfg));
  Sink sink(cfg, "partition.txt");
  for (const auto& part : p.parts) {
    for (std::size_t i = 0; i < part.size(); ++i) sink.out() << (i ? " " : "") << g.external_id(part[i]);
    sink.out() << '\n';
  }
  if (p.early_stop) std::cerr << "early stop: " << p.parts.size() << " of " << cfg.k << " parts\n";
  return 0;
}

int run_embed(const RunConfig& cfg, const HeteroGraph& g) {
  const TypedGraphletSignature sig = resolve_motif(g, cfg);
  const Embedding e = spectral_embedding(g, sig, cfg.dim, spectral_options(cfg));
  Sink sink(cfg, "embedding.txt");
  write_embedding(sink.out(), e);
  return 0;
}

int run_order(const RunConfig& cfg, const HeteroGraph& g) {
  const TypedGraphletSignature sig = resolve_motif(g, cfg);
  const Ordering o = spectral_ordering(g, sig, spectral_options(cfg));
  if (o.graphlet_absent) std::cerr << "warning: graphlet absent, original order kept\n";
  Sink sink(cfg, "order.txt");
  write_ids(sink.out(), g, o.order);
  return 0;
}

int run_rank(const RunConfig& cfg, const HeteroGraph& g) {
  const auto skels = skeleton_list(cfg);
  const auto sigs = occurring_signatures(g, skels, grouping(cfg));
  const GraphletRanking ranking = rank_typed_graphlets(g, sigs, spectral_options(cfg));
  Sink sink(cfg, "ranking.txt");
  for (std::size_t i = 0; i < ranking.ranked.size(); ++i) {
    const RankedGraphlet& r = ranking.ranked[i];
    sink.out() << i + 1 << ' ' << render(g, r.signature) << " lambda2=" << fmt(r.lambda2) << " m=" << r.edge_count
               << " beta=" << fmt(r.beta) << " instances=" << r.instances << '\n';
  }
  return 0;
}

int run_linkpred(const RunConfig& cfg, const HeteroGraph& g) {
  LinkPredictionConfig lp;
  lp.signature = resolve_motif(g, cfg);
  lp.dim = cfg.dim;
  lp.fraction = cfg.fraction;
  lp.spectral = spectral_options(cfg);
  if (!cfg.edge_type.empty()) {
    const TypeId t = g.find_edge_type(cfg.edge_type);
    if (t < 0) throw Error(ErrorCode::kInvalidArgument, "unknown edge type '" + cfg.edge_type + "'");
    lp.edge_type = t;
  }
  std::vector<EdgeOperator> ops;
  if (cfg.op.empty()) {
    ops.assign(all_edge_operators().begin(), all_edge_operators().end());
  } else {
    ops.push_back(parse_edge_operator(cfg.op));
  }
  const std::string sig = render(g, lp.signature);
  Sink sink(cfg, cfg.records ? "linkpred.jsonl" : "linkpred.txt");
  std::vector<double> f1, auc;
  for (int t = 0; t < cfg.seeds; ++t) {
    lp.seed = cfg.seed + static_cast<std::uint64_t>(t);
    std::vector<OperatorResult> results;
    if (ops.size() == 1) {
      results.push_back(link_prediction(g, lp, ops.front()));
    } else {
      const LinkPredictionReport rep = link_prediction(g, lp);
      results = rep.results;
      std::rotate(results.begin(), results.begin() + rep.best, results.begin() + rep.best + 1);
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      const OperatorResult& r = results[i];
      const std::string auc_text = r.metrics.auc ? fmt(*r.metrics.auc) : "na";
      if (cfg.records) {
        nlohmann::ordered_json rec;
        rec["seed"] = lp.seed;
        rec["signature"] = sig;
        rec["operator"] = std::string(to_string(r.op));
        rec["best"] = i == 0;
        rec["f1"] = r.metrics.f1;
        rec["precision"] = r.metrics.precision;
        rec["recall"] = r.metrics.recall;
        rec["auc"] = r.metrics.auc ? nlohmann::ordered_json(*r.metrics.auc) : nlohmann::ordered_json(nullptr);
        rec["threshold"] = r.metrics.threshold;
        sink.out() << rec.dump() << '\n';
      } else {
        sink.out() << "seed=" << lp.seed << " signature=" << sig << " operator=" << to_string(r.op)
                   << (i == 0 && results.size() > 1 ? " best" : "") << " f1=" << fmt(r.metrics.f1)
                   << " precision=" << fmt(r.metrics.precision) << " recall=" << fmt(r.metrics.recall)
                   << " auc=" << auc_text << " threshold=" << fmt(r.metrics.threshold) << '\n';
      }
    }
    f1.push_back(results.front().metrics.f1);
    auc.push_back(results.front().metrics.auc.value_or(0.0));
  }
  const MeanStd mf = mean_std(f1);
  const MeanStd ma = mean_std(auc);
  std::cout << "seeds=" << cfg.seeds << " signature=" << sig << " f1_mean=" << fmt(mf.mean)
            << " f1_std=" << fmt(mf.stddev) << " auc_mean=" << fmt(ma.mean) << " auc_std=" << fmt(ma.stddev) << '\n';
  return 0;
}

int run_compress(const RunConfig& cfg, const HeteroGraph& g) {
  const TypedGraphletSignature sig = resolve_motif(g, cfg);
  const Ordering o = spectral_ordering(g, sig, spectral_options(cfg));
  std::vector<NodeId> native(g.node_count());
  std::iota(native.begin(), native.end(), 0);
  const std::int64_t native_bytes = compressed_size_estimate(g, native);
  const std::int64_t tgs_bytes = compressed_size_estimate(g, o.order);
  std::vector<double> random_bytes;
  std::mt19937_64 rng(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    std::vector<NodeId> perm = native;
    std::shuffle(perm.begin(), perm.end(), rng);
    random_bytes.push_back(static_cast<double>(compressed_size_estimate(g, perm)));
  }
  const MeanStd r = mean_std(random_bytes);
  Sink sink(cfg, "compress.txt");
  sink.out() << "signature=" << render(g, sig) << " seed=" << cfg.seed << '\n';
  sink.out() << "native " << native_bytes << '\n';
  sink.out() << "tgs " << tgs_bytes << '\n';
  sink.out() << "random_mean " << fmt(r.mean) << " random_std " << fmt(r.stddev) << " trials " << cfg.trials << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Typed-graphlet spectral clustering toolkit"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub, bool needs_motif) {
    sub->add_option("--input", cfg.input, "Typed edge list")->required();
    if (needs_motif) sub->add_option("--motif", cfg.motif, "skeleton:typeA,typeB,... or 'best'");
    sub->add_option("--skeletons", cfg.skeletons, "Skeletons considered by census, ranking and --motif best");
    sub->add_flag("--strict-types", cfg.strict_types, "Positional typing instead of type multisets");
    sub->add_option("--threads", cfg.threads, "Worker cap (output does not depend on it)");
    sub->add_option("--output-dir", cfg.output_dir, "Write artifacts here instead of stdout");
  };

  CLI::App* census_cmd = app.add_subcommand("census", "Count typed graphlets");
  add_common(census_cmd, false);
  census_cmd->add_flag("--records", cfg.records, "Line-delimited JSON records");

  CLI::App* cluster_cmd = app.add_subcommand("cluster", "Sweep-cut clustering");
  add_common(cluster_cmd, true);
  cluster_cmd->add_flag("--oracle-check", cfg.oracle_check, "Also report the brute-force optimum (20 nodes max)");

  CLI::App* partition_cmd = app.add_subcommand("partition", "Recursive bipartitioning");
  add_common(partition_cmd, true);
  partition_cmd->add_option("--k", cfg.k, "Number of parts")->check(CLI::PositiveNumber);

  CLI::App* embed_cmd = app.add_subcommand("embed", "Spectral node embeddings");
  add_common(embed_cmd, true);
  embed_cmd->add_option("--dim", cfg.dim, "Embedding dimension");
  embed_cmd->add_flag("--drop-trivial", cfg.drop_trivial, "Skip the smallest eigenvector");

  CLI::App* order_cmd = app.add_subcommand("order", "Spectral vertex ordering");
  add_common(order_cmd, true);

  CLI::App* rank_cmd = app.add_subcommand("rank-motifs", "Rank typed graphlets by beta");
  add_common(rank_cmd, false);

  CLI::App* linkpred_cmd = app.add_subcommand("linkpred", "Link prediction evaluation");
  add_common(linkpred_cmd, true);
  linkpred_cmd->add_option("--dim", cfg.dim, "Embedding dimension");
  linkpred_cmd->add_option("--seed", cfg.seed, "First seed");
  linkpred_cmd->add_option("--seeds", cfg.seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  linkpred_cmd->add_option("--fraction", cfg.fraction, "Fraction of edges held out");
  linkpred_cmd->add_option("--operator", cfg.op, "mean, hadamard, absdiff, squared-diff, max or sum (default: all)");
  linkpred_cmd->add_option("--edge-type", cfg.edge_type, "Predict only edges of this type");
  linkpred_cmd->add_flag("--drop-trivial", cfg.drop_trivial, "Skip the smallest eigenvector");
  linkpred_cmd->add_flag("--records", cfg.records, "Line-delimited JSON records");

  CLI::App* compress_cmd = app.add_subcommand("compress-eval", "Proxy compression under orderings");
  add_common(compress_cmd, true);
  compress_cmd->add_option("--seed", cfg.seed, "Seed for random orderings");
  compress_cmd->add_option("--trials", cfg.trials, "Random orderings")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return static_cast<int>(ErrorCode::kInvalidArgument);
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const HeteroGraph g = load_typed_edge_list_file(cfg.input);
    if (cfg.command == "census") return run_census(cfg, g);
    if (cfg.command == "cluster") return run_cluster(cfg, g);
    if (cfg.command == "partition") return run_partition(cfg, g);
    if (cfg.command == "embed") return run_embed(cfg, g);
    if (cfg.command == "order") return run_order(cfg, g);
    if (cfg.command == "rank-motifs") return run_rank(cfg, g);
    if (cfg.command == "linkpred") return run_linkpred(cfg, g);
    if (cfg.command == "compress-eval") return run_compress(cfg, g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
