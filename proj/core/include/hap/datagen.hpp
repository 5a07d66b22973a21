#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hap/baselines.hpp"
#include "hap/problem.hpp"
#include "hap/rng.hpp"
#include "hap/solution.hpp"

namespace hap {

enum class PayloadKind { kPoint2D, kSequence };

struct TreeNode {
  int id = 0;
  int layer_of_origin = 0;  // 1 = leaves (bottom), num_layers = roots (top)
  int parent = -1;          // -1 for roots
  std::array<double, 2> point{0.0, 0.0};
  std::string seq;          // letters over "ACGT"
  int mutations = -1;       // drawn mutation count of the edge to the parent
};

/// Ground truth emitted by the generators: a forest sampled top-down, with
/// parent links one layer apart and a homogeneous payload type.
struct GenerationTree {
  PayloadKind kind = PayloadKind::kPoint2D;
  int num_layers = 0;
  std::vector<TreeNode> nodes;

  int size() const { return static_cast<int>(nodes.size()); }
  int root_count() const;
};

struct Gen2DConfig {
  int total_points = 200;   // target size across all layers
  int num_layers = 4;
  double top_std = 3.0;     // stddev of the root layer around the origin
  double std_divisor = 2.0; // per-layer shrink going down
  int branching = 2;        // layer size multiplier going down
  std::uint64_t rng_seed = 0;
};

struct GenSeqConfig {
  int alphabet_size = 4;      // fixed: payloads use "ACGT"
  int seq_length = 40;
  int generations = 4;        // number of tree layers, root included
  double children_mean = 10.0;
  double mutations_mean = 3.0;
  int children_max = 50;      // truncation bound of the child-count draw
  std::uint64_t rng_seed = 0;
};

/// Point forest: the top layer is Normal(0, top_std^2) per coordinate; each
/// lower-layer point picks a uniform parent one layer up and samples
/// Normal(parent, sigma^2) per coordinate, sigma shrinking by std_divisor per
/// layer. Layer sizes grow by `branching` going down and sum to roughly
/// total_points. Bitwise reproducible for a fixed config.
GenerationTree gen_2d(const Gen2DConfig& config);

/// Sequence tree: one uniform random root; each node draws its child count
/// from a truncated geometric with mean children_mean (support 1..children_max)
/// and each child mutates a truncated-geometric number (mean mutations_mean,
/// support 0..seq_length) of distinct positions to a different symbol.
GenerationTree gen_sequences(const GenSeqConfig& config);

/// Similarities s(l,i,j) = -||x_i - x_j||^2 on every layer (or the unsquared
/// distance when squared = false), zero diagonal, preferences as given
/// (num_layers x n).
LayeredProblem problem_from_2d(const GenerationTree& tree, int num_layers,
                               const std::vector<std::vector<double>>& preferences,
                               bool squared = true);

/// Similarities s(l,i,j) = log pmf of the truncated-geometric mutation-count
/// distribution (mean mutations_mean, truncated at seq_length, renormalized)
/// evaluated at Hamming(seq_i, seq_j); diagonal forced to zero.
LayeredProblem problem_from_sequences(const GenerationTree& tree, int num_layers,
                                      const std::vector<std::vector<double>>& preferences,
                                      double mutations_mean = 3.0);

/// The hierarchy the generator actually sampled: a node that originated at
/// layer t is active at layers 1..t, an exemplar at layers below t, and is
/// assigned to its parent at layer t (roots stay exemplars at the top).
HierarchySolution truth_solution(const GenerationTree& tree);

/// Exemplar count per layer of the truth hierarchy.
std::vector<int> truth_cluster_counts(const GenerationTree& tree);

/// Coordinates for hk_means: raw 2D points, or a 0/1 one-hot encoding per
/// sequence position (alphabet_size * seq_length dims).
PointCloud featurize(const GenerationTree& tree);

int hamming(const std::string& a, const std::string& b);

// Geometric distribution truncated to {lo..hi} and renormalized,
// pmf(k) proportional to (1-p)^(k-lo) * p.
double trunc_geom_log_pmf(double p, int lo, int hi, int k);
int sample_trunc_geom(Rng& rng, double p, int lo, int hi);

/// Median absolute finite off-diagonal similarity of layer 0; the scale
/// anchor for preference sweeps.
double median_abs_similarity(const LayeredProblem& problem);

/// Per-layer constant preferences for experiment sweeps: num_layers draws
/// from U[lo, hi] * scale, sorted so values decrease with the layer index
/// (the top layer gets the most negative value), broadcast over points.
std::vector<std::vector<double>> draw_decreasing_preferences(
    Rng& rng, int num_layers, int num_points, double lo, double hi, double scale);

}  // namespace hap
