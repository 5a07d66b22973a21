#pragma once

#include <cstdint>
#include <vector>

#include "hap/solver.hpp"

namespace hap {

// Cluster counts per layer for the k-based baselines; must be positive,
// non-increasing, and bounded by the number of points available at each layer.
using KPerLayer = std::vector<int>;

struct GreedyInfo {
  bool converged = true;  // all per-layer runs converged
  int iterations = 0;     // summed over layers
};

/// Layer-by-layer baseline: solves layer 0 as a flat problem over all points,
/// then each layer above as a flat problem restricted to the exemplars found
/// at the layer below. No information flows back down.
HierarchySolution greedy_hap(const LayeredProblem& problem,
                             const SolverConfig& config,
                             GreedyInfo* info = nullptr);

/// Hierarchical k-medians. Per layer: medoid-based local search on the
/// negated similarities (alternate nearest-medoid assignment and per-cluster
/// medoid re-selection until a fixed point), best of `restarts` random
/// medoid initializations. Layer l > 0 runs on the medoids of layer l-1.
HierarchySolution hk_medians(const LayeredProblem& problem, const KPerLayer& k,
                             int restarts, std::uint64_t seed);

struct PointCloud {
  int dim = 0;
  std::vector<std::vector<double>> coords;

  int size() const { return static_cast<int>(coords.size()); }
};

/// Hierarchical k-means. Per layer: Lloyd iterations on the coordinates
/// (squared Euclidean), best of `restarts` random center initializations,
/// then each cluster mean is snapped to its nearest data point to obtain an
/// exemplar. Layer l > 0 runs on the exemplar points of layer l-1.
HierarchySolution hk_means(const PointCloud& cloud, const KPerLayer& k,
                           int restarts, std::uint64_t seed);

}  // namespace hap
