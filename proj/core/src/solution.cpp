#include "hap/solution.hpp"

#include <algorithm>
#include <cstdio>

namespace hap {

std::vector<int> HierarchySolution::cluster_counts() const {
  std::vector<int> counts;
  counts.reserve(layers.size());
  for (const auto& l : layers) counts.push_back(static_cast<int>(l.exemplars.size()));
  return counts;
}

std::vector<std::vector<int>> HierarchySolution::exemplar_sets() const {
  std::vector<std::vector<int>> sets;
  sets.reserve(layers.size());
  for (const auto& l : layers) sets.push_back(l.exemplars);
  return sets;
}

namespace {

bool sorted_unique_in_range(const std::vector<int>& v, int n) {
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (v[t] < 0 || v[t] >= n) return false;
    if (t > 0 && v[t] <= v[t - 1]) return false;
  }
  return true;
}

std::string layer_msg(int l, const char* what) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "layer %d: %s", l, what);
  return buf;
}

}  // namespace

std::vector<std::string> solution_violations(const HierarchySolution& sol,
                                             const LayeredProblem& p) {
  std::vector<std::string> out;
  const int n = p.num_points();
  if (sol.num_points != n || sol.num_layers() != p.num_layers()) {
    throw StructuralError("solution dimensions do not match the problem");
  }
  for (int l = 0; l < sol.num_layers(); ++l) {
    const LayerAssignment& la = sol.layers[l];
    if (!sorted_unique_in_range(la.active, n)) {
      out.push_back(layer_msg(l, "active set not a sorted set of point ids"));
      continue;
    }
    if (!sorted_unique_in_range(la.exemplars, n)) {
      out.push_back(layer_msg(l, "exemplar set not a sorted set of point ids"));
      continue;
    }
    if (la.assignment.size() != static_cast<std::size_t>(n)) {
      out.push_back(layer_msg(l, "assignment vector has wrong size"));
      continue;
    }
    if (l == 0) {
      if (static_cast<int>(la.active.size()) != n) {
        out.push_back(layer_msg(l, "bottom layer must cluster every point"));
      }
    } else if (la.active != sol.layers[l - 1].exemplars) {
      out.push_back(layer_msg(l, "active set differs from the exemplars below"));
    }
    if (!std::includes(la.active.begin(), la.active.end(),
                       la.exemplars.begin(), la.exemplars.end())) {
      out.push_back(layer_msg(l, "exemplars not a subset of the active set"));
    }
    std::vector<char> is_active(n, 0), is_ex(n, 0);
    for (int i : la.active) is_active[i] = 1;
    for (int j : la.exemplars) is_ex[j] = 1;
    for (int i = 0; i < n; ++i) {
      const int a = la.assignment[i];
      if (!is_active[i]) {
        if (a != -1) out.push_back(layer_msg(l, "inactive point carries an assignment"));
        continue;
      }
      if (a < 0 || a >= n) {
        out.push_back(layer_msg(l, "active point without a valid assignment"));
        continue;
      }
      if (!is_ex[a]) out.push_back(layer_msg(l, "assignment target is not an exemplar"));
      if ((a == i) != static_cast<bool>(is_ex[i])) {
        out.push_back(layer_msg(l, "self-assignment must coincide with exemplar status"));
      }
    }
  }
  return out;
}

double objective(const HierarchySolution& sol, const LayeredProblem& p) {
  if (!solution_violations(sol, p).empty()) return kNegInf;
  double total = 0.0;
  for (int l = 0; l < sol.num_layers(); ++l) {
    const LayerAssignment& la = sol.layers[l];
    // exemplar self-assignments contribute s(l,j,j) = 0
    for (int i : la.active) total += p.s(l, i, la.assignment[i]);
    for (int j : la.exemplars) total += p.c(l, j);
  }
  return total;
}

}  // namespace hap
