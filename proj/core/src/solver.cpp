#include "hap/solver.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "hap/rng.hpp"

namespace hap {

HierarchySolution decode(const MessageState& st, const LayeredProblem& p) {
  const int n = p.num_points();
  const int L = p.num_layers();
  if (st.num_points != n || st.num_layers != L) {
    throw StructuralError("message state does not match the problem dimensions");
  }
  HierarchySolution sol;
  sol.num_points = n;
  sol.layers.resize(L);
  std::vector<int> candidates(n);
  std::iota(candidates.begin(), candidates.end(), 0);

  for (int l = 0; l < L; ++l) {
    LayerAssignment& la = sol.layers[l];
    if (l < st.frozen_below) {
      la.active = st.fixed[l].active;
      la.exemplars = st.fixed[l].exemplars;
      la.assignment = st.fixed[l].assignment;
      candidates = la.exemplars;
      continue;
    }
    la.active = candidates;
    la.assignment.assign(n, -1);
    const std::vector<double>& alpha_l = st.alpha[l];
    std::vector<char> is_ex(n, 0);

    // a candidate whose best choice among the candidates is itself is an
    // exemplar (ties go to the lowest index)
    for (int j : candidates) {
      const double* arow = alpha_l.data() + static_cast<std::size_t>(j) * n;
      const double* srow = p.sim_row(l, j);
      int best_k = candidates.front();
      double best_v = kNegInf;
      bool first = true;
      for (int k : candidates) {
        const double v = arow[k] + srow[k];
        if (first || v > best_v) {
          best_v = v;
          best_k = k;
          first = false;
        }
      }
      if (best_k == j) is_ex[j] = 1;
    }

    // assign the rest to their best reachable exemplar; a candidate with no
    // finite similarity to any exemplar becomes one itself
    for (int i : candidates) {
      if (is_ex[i]) {
        la.assignment[i] = i;
        continue;
      }
      const double* arow = alpha_l.data() + static_cast<std::size_t>(i) * n;
      const double* srow = p.sim_row(l, i);
      int best_e = -1;
      double best_v = kNegInf;
      for (int e : candidates) {
        if (!is_ex[e] || srow[e] == kNegInf) continue;
        const double v = arow[e] + srow[e];
        if (best_e == -1 || v > best_v) {
          best_v = v;
          best_e = e;
        }
      }
      if (best_e == -1) {
        is_ex[i] = 1;
        la.assignment[i] = i;
      } else {
        la.assignment[i] = best_e;
      }
    }

    la.exemplars.clear();
    for (int j : candidates) {
      if (is_ex[j]) la.exemplars.push_back(j);
    }
    candidates = la.exemplars;
  }
  return sol;
}

namespace {

LayeredProblem apply_jitter(const LayeredProblem& p, std::uint64_t seed) {
  LayeredProblem out = p;
  Rng rng(Rng::splitmix64(seed ^ 0x6A09E667F3BCC909ULL));
  for (int l = 0; l < p.num_layers(); ++l) {
    for (int i = 0; i < p.num_points(); ++i) {
      for (int j = 0; j < p.num_points(); ++j) {
        if (i == j) continue;
        const double v = p.s(l, i, j);
        if (v == kNegInf) continue;
        out.set_s(l, i, j, v + 1e-12 * std::abs(v) * rng.uniform(-1.0, 1.0));
      }
    }
  }
  return out;
}

void fix_next_layer(MessageState& st, const HierarchySolution& sol) {
  const int l = st.frozen_below;
  FixedLayer f;
  f.active = sol.layers[l].active;
  f.exemplars = sol.layers[l].exemplars;
  f.assignment = sol.layers[l].assignment;
  st.fixed.push_back(std::move(f));
  ++st.frozen_below;
}

}  // namespace

SolveResult solve(const LayeredProblem& p, const SolverConfig& cfg) {
  return solve(p, cfg, MessageState(p));
}

SolveResult solve(const LayeredProblem& problem, const SolverConfig& cfg,
                  MessageState st) {
  const ValidationReport rep = validate_problem(problem);
  if (!rep.valid()) {
    throw StructuralError("invalid problem: " + rep.violations.front());
  }
  if (cfg.max_iterations < 0) throw StructuralError("max_iterations must be >= 0");
  if (cfg.convergence_window < 1) throw StructuralError("convergence_window must be >= 1");
  if (cfg.fix_period < 1) throw StructuralError("fix_period must be >= 1");
  const int L = problem.num_layers();

  const LayeredProblem* work = &problem;
  LayeredProblem jittered;
  if (cfg.tie_jitter) {
    jittered = apply_jitter(problem, cfg.rng_seed);
    work = &jittered;
  }

  SolveTrace trace;
  HierarchySolution sol = decode(st, *work);
  std::vector<std::vector<int>> prev_sets;
  int stable = 0;
  bool converged = (cfg.max_iterations == 0);

  // anytime behavior: the sweeps oscillate through good decodes, so keep the
  // best one seen (with its state, so a zero-iteration re-solve reproduces it)
  HierarchySolution best_sol = sol;
  double best_obj = objective(sol, problem);
  MessageState best_state = st;

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    iterate(st, *work, cfg);
    sol = decode(st, *work);
    const double obj = objective(sol, problem);
    trace.objectives.push_back(obj);
    trace.iterations = it;
    if (obj > best_obj) {
      best_obj = obj;
      best_sol = sol;
      best_state = st;
    }

    std::vector<std::vector<int>> sets = sol.exemplar_sets();
    if (!prev_sets.empty() && sets == prev_sets) {
      ++stable;
    } else {
      stable = 0;
    }
    prev_sets = std::move(sets);
    if (stable >= cfg.convergence_window) {
      converged = true;
      break;
    }

    if (cfg.schedule == Schedule::kFixBottom && st.frozen_below < L &&
        it % cfg.fix_period == 0) {
      fix_next_layer(st, sol);
      if (st.frozen_below == L) {
        converged = true;
        break;
      }
    }
  }

  trace.converged = converged;
  trace.layers_fixed = st.frozen_below;
  return SolveResult{std::move(best_sol), std::move(trace), std::move(best_state)};
}

}  // namespace hap
