#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hap/common.hpp"

namespace hap {

/// A hierarchical exemplar-clustering instance.
///
/// Layer l in [0, num_layers) holds an n-by-n similarity matrix s(l,i,j)
/// (reward for point i choosing point j as its exemplar at that layer;
/// -inf marks a forbidden assignment) and per-point exemplar preferences
/// c(l,j). Layer 0 is the bottom layer where all points are clustered.
/// Diagonals are zero: preferences are carried by c, not by s(j,j).
class LayeredProblem {
 public:
  LayeredProblem() = default;

  // zero-filled similarities and preferences
  LayeredProblem(int num_points, int num_layers);

  int num_points() const { return n_; }
  int num_layers() const { return num_layers_; }

  double s(int l, int i, int j) const {
    return sim_[l][static_cast<std::size_t>(i) * n_ + j];
  }
  void set_s(int l, int i, int j, double v) {
    sim_[l][static_cast<std::size_t>(i) * n_ + j] = v;
  }
  double c(int l, int j) const { return pref_[l][j]; }
  void set_c(int l, int j, double v) { pref_[l][j] = v; }

  const double* sim_row(int l, int i) const {
    return sim_[l].data() + static_cast<std::size_t>(i) * n_;
  }
  const std::vector<double>& layer_sim(int l) const { return sim_[l]; }
  const std::vector<double>& layer_pref(int l) const { return pref_[l]; }

  // row-major n*n matrix for one layer
  void set_layer_sim(int l, std::vector<double> row_major);
  void set_layer_pref(int l, std::vector<double> prefs);

  // force s(l,j,j) = 0 everywhere
  void zero_diagonal();

 private:
  int n_ = 0;
  int num_layers_ = 0;
  std::vector<std::vector<double>> sim_;   // per layer, n*n row-major
  std::vector<std::vector<double>> pref_;  // per layer, n
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

/// Reports every rule violation in the instance: nonzero or -inf diagonals,
/// NaN or +inf entries, non-finite preferences, and rows with no finite
/// similarity. An empty report means the instance is solvable.
ValidationReport validate_problem(const LayeredProblem& problem);

}  // namespace hap
