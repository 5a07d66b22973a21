#include <cstdio>

#include "commands.hpp"
#include "json.hpp"

namespace hapcli {

namespace {

using nlohmann::json;

std::vector<int> layer_sizes(const hap::GenerationTree& tree) {
  std::vector<int> sizes(tree.num_layers, 0);
  for (const auto& nd : tree.nodes) ++sizes[nd.layer_of_origin - 1];
  return sizes;
}

void print_summary(const char* kind, const hap::GenerationTree& tree,
                   std::uint64_t seed, const std::vector<std::vector<double>>& prefs) {
  std::printf("generated %s tree: %d points, %d layers, seed %llu\n", kind,
              tree.size(), tree.num_layers, static_cast<unsigned long long>(seed));
  const std::vector<int> sizes = layer_sizes(tree);
  std::printf("  points per layer (bottom up):");
  for (int s : sizes) std::printf(" %d", s);
  std::printf("\n  preferences per layer (bottom up):");
  for (const auto& layer : prefs) std::printf(" %.6g", layer.empty() ? 0.0 : layer[0]);
  std::printf("\n");
}

struct GenCommon {
  PrefFlags prefs;
  std::string out;
  std::string tree_out;

  void attach(CLI::App* cmd) {
    prefs.attach(cmd);
    cmd->add_option("--out", out, "problem file to write")->required();
    cmd->add_option("--tree-out", tree_out, "ground-truth tree file to write");
  }
};

void finish(const char* kind, const hap::GenerationTree& tree,
            hap::LayeredProblem& problem, const GenCommon& common,
            std::uint64_t seed, json metadata) {
  const auto prefs = common.prefs.make(problem, common.prefs.pref_seed);
  for (int l = 0; l < problem.num_layers(); ++l) problem.set_layer_pref(l, prefs[l]);

  metadata["generator"] = kind;
  metadata["seed"] = seed;
  metadata["rng_stream"] = hap::kRngStreamId;
  json pj = json::array();
  for (const auto& layer : prefs) pj.push_back(layer.empty() ? 0.0 : layer[0]);
  metadata["layer_preferences"] = std::move(pj);

  hap::io::write_problem(common.out, problem, metadata.dump());
  if (!common.tree_out.empty()) {
    hap::io::write_tree(common.tree_out, tree, metadata.dump());
  }
  print_summary(kind, tree, seed, prefs);
}

}  // namespace

void register_gen(CLI::App& app, int& exit_code) {
  CLI::App* gen = app.add_subcommand("gen", "generate synthetic problems with ground truth");
  gen->require_subcommand(1);

  // --- 2d ---
  auto cfg2d = std::make_shared<hap::Gen2DConfig>();
  auto common2d = std::make_shared<GenCommon>();
  auto unsquared = std::make_shared<bool>(false);
  CLI::App* c2d = gen->add_subcommand("2d", "layered Gaussian point clouds");
  c2d->add_option("--total", cfg2d->total_points, "target point count across layers")
      ->check(CLI::PositiveNumber);
  c2d->add_option("--layers", cfg2d->num_layers, "number of layers")
      ->check(CLI::Range(1, 7));
  c2d->add_option("--top-std", cfg2d->top_std, "stddev of the top layer")
      ->check(CLI::PositiveNumber);
  c2d->add_option("--std-divisor", cfg2d->std_divisor, "per-layer stddev shrink");
  c2d->add_option("--branching", cfg2d->branching, "layer size multiplier going down")
      ->check(CLI::PositiveNumber);
  c2d->add_option("--seed", cfg2d->rng_seed, "generator seed");
  c2d->add_flag("--unsquared", *unsquared, "use -distance instead of -distance^2");
  common2d->attach(c2d);
  c2d->callback([cfg2d, common2d, unsquared, &exit_code] {
    const hap::GenerationTree tree = hap::gen_2d(*cfg2d);
    std::vector<std::vector<double>> zeros(
        cfg2d->num_layers, std::vector<double>(tree.size(), 0.0));
    hap::LayeredProblem p =
        hap::problem_from_2d(tree, cfg2d->num_layers, zeros, !*unsquared);
    json meta;
    meta["total"] = cfg2d->total_points;
    meta["layers"] = cfg2d->num_layers;
    meta["top_std"] = cfg2d->top_std;
    meta["std_divisor"] = cfg2d->std_divisor;
    meta["branching"] = cfg2d->branching;
    meta["squared"] = !*unsquared;
    finish("2d", tree, p, *common2d, cfg2d->rng_seed, std::move(meta));
    exit_code = kOk;
  });

  // --- seq ---
  auto cfgseq = std::make_shared<hap::GenSeqConfig>();
  auto commonseq = std::make_shared<GenCommon>();
  CLI::App* cseq = gen->add_subcommand("seq", "simulated sequence-evolution trees");
  cseq->add_option("--generations", cfgseq->generations, "tree depth, root included")
      ->check(CLI::PositiveNumber);
  cseq->add_option("--seq-length", cfgseq->seq_length, "sequence length")
      ->check(CLI::PositiveNumber);
  cseq->add_option("--children-mean", cfgseq->children_mean, "mean child count")
      ->check(CLI::PositiveNumber);
  cseq->add_option("--mutations-mean", cfgseq->mutations_mean, "mean mutations per child")
      ->check(CLI::PositiveNumber);
  cseq->add_option("--children-max", cfgseq->children_max, "child count truncation")
      ->check(CLI::PositiveNumber);
  cseq->add_option("--seed", cfgseq->rng_seed, "generator seed");
  commonseq->attach(cseq);
  cseq->callback([cfgseq, commonseq, &exit_code] {
    const hap::GenerationTree tree = hap::gen_sequences(*cfgseq);
    std::vector<std::vector<double>> zeros(
        cfgseq->generations, std::vector<double>(tree.size(), 0.0));
    hap::LayeredProblem p = hap::problem_from_sequences(
        tree, cfgseq->generations, zeros, cfgseq->mutations_mean);
    json meta;
    meta["generations"] = cfgseq->generations;
    meta["seq_length"] = cfgseq->seq_length;
    meta["children_mean"] = cfgseq->children_mean;
    meta["mutations_mean"] = cfgseq->mutations_mean;
    meta["children_max"] = cfgseq->children_max;
    finish("seq", tree, p, *commonseq, cfgseq->rng_seed, std::move(meta));
    exit_code = kOk;
  });
}

}  // namespace hapcli
