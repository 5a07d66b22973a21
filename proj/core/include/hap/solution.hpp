#pragma once

#include <string>
#include <vector>

#include "hap/problem.hpp"

namespace hap {

struct LayerAssignment {
  std::vector<int> active;     // ascending ids of points clustered at this layer
  std::vector<int> exemplars;  // ascending subset of active
  std::vector<int> assignment; // size n; exemplar of each active point, -1 otherwise
};

/// A decoded hierarchy. Layer 0 clusters every point; the points active at
/// layer l+1 are exactly the exemplars of layer l, and exemplars are always
/// assigned to themselves.
struct HierarchySolution {
  int num_points = 0;
  std::vector<LayerAssignment> layers;

  int num_layers() const { return static_cast<int>(layers.size()); }
  std::vector<int> cluster_counts() const;
  std::vector<std::vector<int>> exemplar_sets() const;
};

/// All hierarchy-constraint violations, empty when the solution is valid.
std::vector<std::string> solution_violations(const HierarchySolution& sol,
                                             const LayeredProblem& problem);

/// Net similarity of a solution: the sum of assignment similarities plus the
/// selected exemplar preferences over all layers. Returns -inf when the
/// solution violates the hierarchy constraints or uses a forbidden
/// similarity. Throws StructuralError on dimension mismatch.
double objective(const HierarchySolution& sol, const LayeredProblem& problem);

}  // namespace hap
