#include "hap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hap {

std::pair<HierarchySolution, double> brute_force_map(const LayeredProblem& p) {
  const int n = p.num_points();
  const int L = p.num_layers();
  if (n > 8 || L > 3) {
    throw StructuralError("brute_force_map refuses instances beyond n=8, layers=3");
  }
  const ValidationReport rep = validate_problem(p);
  if (!rep.valid()) throw StructuralError("invalid problem: " + rep.violations.front());

  // Each point gets a membership level m in 0..L: it belongs to the exemplar
  // sets of layers 1..m. Levels encode every nested exemplar-set chain; the
  // best assignments given a chain decompose into per-point maxima.
  std::vector<int> level(n, 0), best_level;
  double best_obj = kNegInf;
  bool have_best = false;

  for (;;) {
    double obj = 0.0;
    bool feasible = true;
    for (int l = 0; l < L && feasible; ++l) {
      bool has_exemplar = false;
      for (int j = 0; j < n; ++j) {
        if (level[j] >= l + 1) {
          obj += p.c(l, j);
          has_exemplar = true;
        }
      }
      for (int i = 0; i < n && feasible; ++i) {
        if (level[i] != l) continue;  // active at layer l but not an exemplar
        double best_s = kNegInf;
        for (int j = 0; j < n; ++j) {
          if (level[j] < l + 1) continue;
          const double s = p.s(l, i, j);
          if (s > best_s) best_s = s;
        }
        if (best_s == kNegInf) {
          feasible = false;  // no reachable exemplar (or none at all)
        } else {
          obj += best_s;
        }
      }
      if (!has_exemplar) feasible = false;
    }
    if (feasible && (!have_best || obj > best_obj)) {
      best_obj = obj;
      best_level = level;
      have_best = true;
    }
    // next level vector, lexicographic with index 0 most significant
    int t = n - 1;
    while (t >= 0 && level[t] == L) {
      level[t] = 0;
      --t;
    }
    if (t < 0) break;
    ++level[t];
  }
  if (!have_best) {
    throw StructuralError("no feasible hierarchy exists for this instance");
  }

  // rebuild the argmax with lowest-index tie-breaking per assignment
  HierarchySolution sol;
  sol.num_points = n;
  sol.layers.resize(L);
  for (int l = 0; l < L; ++l) {
    LayerAssignment& la = sol.layers[l];
    la.assignment.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (best_level[i] < l) continue;
      la.active.push_back(i);
      if (best_level[i] >= l + 1) {
        la.exemplars.push_back(i);
        la.assignment[i] = i;
      } else {
        int best_j = -1;
        double best_s = kNegInf;
        for (int j = 0; j < n; ++j) {
          if (best_level[j] < l + 1) continue;
          const double s = p.s(l, i, j);
          if (s == kNegInf) continue;
          if (best_j == -1 || s > best_s) {
            best_s = s;
            best_j = j;
          }
        }
        la.assignment[i] = best_j;
      }
    }
  }
  return {std::move(sol), objective(sol, p)};
}

namespace {

void check_universe(const HierarchySolution& pred, const GenerationTree& truth) {
  if (pred.num_points != truth.size()) {
    throw StructuralError("solution and tree cover different point universes");
  }
  if (pred.num_layers() != truth.num_layers) {
    throw StructuralError("solution and tree have different layer counts");
  }
}

// highest layer (1-based) at which each point is still active
std::vector<int> predicted_origin(const HierarchySolution& sol) {
  std::vector<int> top(sol.num_points, 0);
  for (int l = 0; l < sol.num_layers(); ++l) {
    for (int i : sol.layers[l].active) top[i] = l + 1;
  }
  return top;
}

}  // namespace

PRPoint precision_recall(const HierarchySolution& pred, const GenerationTree& truth) {
  check_universe(pred, truth);
  const std::vector<int> pred_origin = predicted_origin(pred);
  long tp = 0, fp = 0, fn = 0;
  for (int i = 0; i < truth.size(); ++i) {
    const int t = truth.nodes[i].layer_of_origin;
    const int q = pred_origin[i];
    if (q >= 2 && q == t) {
      ++tp;
    } else {
      if (q >= 2) ++fp;
      if (t >= 2) ++fn;
    }
  }
  PRPoint pr;
  if (tp + fp > 0) pr.precision = static_cast<double>(tp) / (tp + fp);
  if (tp + fn > 0) pr.recall = static_cast<double>(tp) / (tp + fn);
  return pr;
}

namespace {

std::vector<int> composed_labels(const HierarchySolution& sol, int layer) {
  std::vector<int> lab(sol.num_points);
  for (int i = 0; i < sol.num_points; ++i) {
    int cur = i;
    for (int m = 0; m <= layer; ++m) cur = sol.layers[m].assignment[cur];
    lab[i] = cur;
  }
  return lab;
}

double pair_agreement(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  std::map<std::pair<int, int>, long> cell;
  std::map<int, long> row, col;
  for (int i = 0; i < n; ++i) {
    ++cell[{a[i], b[i]}];
    ++row[a[i]];
    ++col[b[i]];
  }
  auto pairs2 = [](long c) { return c * (c - 1) / 2; };
  long both_same = 0, same_a = 0, same_b = 0;
  for (const auto& [key, c] : cell) both_same += pairs2(c);
  for (const auto& [key, c] : row) same_a += pairs2(c);
  for (const auto& [key, c] : col) same_b += pairs2(c);
  const long total = pairs2(n);
  if (total == 0) return 1.0;
  const long both_diff = total - same_a - same_b + both_same;
  return static_cast<double>(both_same + both_diff) / static_cast<double>(total);
}

}  // namespace

double rand_index(const HierarchySolution& pred, const GenerationTree& truth, int layer) {
  check_universe(pred, truth);
  if (layer < 0 || layer >= pred.num_layers()) {
    throw StructuralError("rand_index: layer out of range");
  }
  const HierarchySolution gt = truth_solution(truth);
  return pair_agreement(composed_labels(pred, layer), composed_labels(gt, layer));
}

RandReport rand_report(const HierarchySolution& pred, const GenerationTree& truth) {
  RandReport report;
  for (int l = 0; l < pred.num_layers(); ++l) {
    report.per_layer.push_back(rand_index(pred, truth, l));
  }
  double sum = 0.0;
  for (double v : report.per_layer) sum += v;
  report.mean = report.per_layer.empty() ? 0.0 : sum / report.per_layer.size();
  return report;
}

std::vector<ObjectiveRow> compare_objectives(
    const std::vector<std::pair<std::string, HierarchySolution>>& solutions,
    const LayeredProblem& problem, const std::string& baseline) {
  double base_obj = kNegInf;
  bool have_base = false;
  for (const auto& [method, sol] : solutions) {
    if (method == baseline) {
      base_obj = objective(sol, problem);
      have_base = true;
      break;
    }
  }
  std::vector<ObjectiveRow> rows;
  for (const auto& [method, sol] : solutions) {
    ObjectiveRow row;
    row.method = method;
    row.objective_value = objective(sol, problem);
    if (have_base && base_obj != kNegInf && row.objective_value != kNegInf) {
      row.improvement_pct = 100.0 * (row.objective_value - base_obj) / std::abs(base_obj);
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.objective_value > b.objective_value;
  });
  return rows;
}

}  // namespace hap
