#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hap/datagen.hpp"
#include "hap/solution.hpp"

namespace hap {

/// Exact MAP by exhaustive enumeration, for n <= 8 and num_layers <= 3
/// (throws StructuralError beyond that). Every nested exemplar-set chain is
/// enumerated; given a chain, the best assignment of each active point is an
/// independent per-point maximum. Ties are broken toward the
/// lexicographically smallest membership encoding, then the lowest exemplar
/// index per assignment.
std::pair<HierarchySolution, double> brute_force_map(const LayeredProblem& problem);

struct PRPoint {
  std::optional<double> precision;  // empty when nothing was predicted
  std::optional<double> recall;     // empty when the tree has no internal nodes
  std::string setting_id;
};

/// Ancestor identification, scored per (point, layer) pair for layers >= 2.
/// A pair is true iff the point originated at that layer of the tree, and
/// predicted iff that layer is the highest at which the solution keeps the
/// point active. Exactly one pair per point on each side.
PRPoint precision_recall(const HierarchySolution& pred, const GenerationTree& truth);

/// Fraction of unordered point pairs whose sibling/non-sibling relation at
/// `layer` (0-based) agrees between the two hierarchies; labels are obtained
/// by composing assignments upward from layer 0 through `layer`.
double rand_index(const HierarchySolution& pred, const GenerationTree& truth, int layer);

struct RandReport {
  std::vector<double> per_layer;
  double mean = 0.0;
};

RandReport rand_report(const HierarchySolution& pred, const GenerationTree& truth);

struct ObjectiveRow {
  std::string method;
  double objective_value = 0.0;
  std::optional<double> improvement_pct;  // vs the baseline entry; empty for
                                          // invalid rows or a missing baseline
};

/// Objective table sorted by objective descending. Improvement of A over the
/// baseline B is 100 * (obj_A - obj_B) / |obj_B|. Invalid solutions score
/// -inf and are excluded from percent computation.
std::vector<ObjectiveRow> compare_objectives(
    const std::vector<std::pair<std::string, HierarchySolution>>& solutions,
    const LayeredProblem& problem, const std::string& baseline);

}  // namespace hap
