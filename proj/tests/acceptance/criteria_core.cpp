#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>

#include "../oracles/flat_ap_reference.hpp"
#include "../oracles/test_instances.hpp"
#include "criteria.hpp"
#include "hap/baselines.hpp"
#include "hap/eval.hpp"
#include "hap/solver.hpp"

namespace acceptance {

using namespace hap;

namespace {

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

}  // namespace

// 1. On random tiny instances the solver matches the exhaustive optimum on
// most instances, is within 5% on nearly all, and greedy never exceeds it.
Result oracle_optimality() {
  Rng rng(20240001);
  SolverConfig cfg;
  cfg.damping = 0.9;
  cfg.max_iterations = 2000;
  cfg.convergence_window = 50;

  const int total = 200;
  int exact = 0, within5 = 0;
  int greedy_above_oracle = 0;
  for (int trial = 0; trial < total; ++trial) {
    const int n = 3 + rng.uniform_int(0, 3);
    const int L = 1 + rng.uniform_int(0, 2);
    const LayeredProblem p = testutil::random_problem(n, L, rng);
    const auto [best, best_obj] = brute_force_map(p);

    const SolveResult r = solve(p, cfg);
    const double hap_obj = objective(r.solution, p);
    const double tol = 1e-9 * std::max(1.0, std::abs(best_obj));
    if (hap_obj >= best_obj - tol) ++exact;
    if (hap_obj >= best_obj - 0.05 * std::abs(best_obj)) ++within5;

    const HierarchySolution g = greedy_hap(p, cfg);
    if (objective(g, p) > best_obj + tol) ++greedy_above_oracle;
  }
  Result res;
  const double exact_pct = 100.0 * exact / total;
  const double within_pct = 100.0 * within5 / total;
  res.pass = exact_pct >= 60.0 && within_pct >= 90.0 && greedy_above_oracle == 0;
  res.detail = format("exact on %.0f%% (need >=60%%), within 5%% on %.0f%% "
                      "(need >=90%%), greedy above oracle on %d instances (need 0)",
                      exact_pct, within_pct, greedy_above_oracle);
  return res;
}

// 2. Fifty random single-layer instances: the engine's message arrays equal
// an independently coded flat implementation bit for bit after 200 sweeps.
Result flat_reduction() {
  Rng rng(20240002);
  const int n = 50;
  int mismatched = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const LayeredProblem p = testutil::random_problem(n, 1, rng);
    FlatApReference ref(n, p.layer_sim(0), p.layer_pref(0));
    MessageState st(p);
    SolverConfig cfg;
    cfg.damping = (trial % 2 == 0) ? 0.5 : 0.9;
    bool ok = true;
    for (int sweep = 0; sweep < 200; ++sweep) {
      iterate(st, p, cfg);
      ref.sweep(cfg.damping);
    }
    ok = std::memcmp(st.rho[0].data(), ref.rho().data(), sizeof(double) * n * n) == 0 &&
         std::memcmp(st.alpha[0].data(), ref.alpha().data(), sizeof(double) * n * n) == 0;
    if (!ok) ++mismatched;
  }
  Result res;
  res.pass = mismatched == 0;
  res.detail = format("%d of 50 instances bitwise-identical after 200 sweeps "
                      "(zero tolerance)", 50 - mismatched);
  return res;
}

namespace {

double median_sweep_ms(int n, int L, int sweeps) {
  Rng rng(777);
  const LayeredProblem p = testutil::random_problem(n, L, rng);
  SolverConfig cfg;
  std::vector<double> times;
  for (int rep = 0; rep < 5; ++rep) {
    MessageState st(p);
    iterate(st, p, cfg);  // warm the caches
    const auto start = std::chrono::steady_clock::now();
    for (int s = 0; s < sweeps; ++s) iterate(st, p, cfg);
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(stop - start).count() /
                    sweeps);
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace

// 6. Per-sweep wall time scales quadratically in n and linearly in the layer
// count, within generous constant-factor windows.
Result complexity_scaling() {
  const double t100 = median_sweep_ms(100, 3, 60);
  const double t200 = median_sweep_ms(200, 3, 24);
  const double t400 = median_sweep_ms(400, 3, 10);
  const double l3 = median_sweep_ms(200, 3, 24);
  const double l6 = median_sweep_ms(200, 6, 12);

  const double r1 = t200 / t100;
  const double r2 = t400 / t200;
  const double rl = l6 / l3;
  Result res;
  res.pass = r1 >= 2.5 && r1 <= 6.0 && r2 >= 2.5 && r2 <= 6.0 && rl >= 1.5 && rl <= 3.0;
  res.detail = format("n-doubling ratios %.2f, %.2f (need within [2.5,6]); "
                      "layer-doubling ratio %.2f (need within [1.5,3])", r1, r2, rl);
  return res;
}

// 7. Randomized decodes always yield valid hierarchies with finite
// objectives, and sweeps never put NaN or +inf into any message array.
Result validity_invariants() {
  Rng rng(20240007);
  SolverConfig cfg;
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + rng.uniform_int(0, 7);
    const int L = 1 + rng.uniform_int(0, 2);
    const double forbid = (trial % 2 == 0) ? rng.uniform(0.0, 0.7) : 0.0;
    const LayeredProblem p = testutil::random_problem(n, L, rng, forbid);
    MessageState st(p);
    for (int l = 0; l < L; ++l) {
      for (auto& v : st.alpha[l]) {
        v = (rng.uniform01() < 0.1) ? kNegInf : rng.uniform(-20.0, 20.0);
      }
      for (auto& v : st.rho[l]) {
        v = (rng.uniform01() < 0.1) ? kNegInf : rng.uniform(-20.0, 20.0);
      }
      for (auto& v : st.tau[l]) v = rng.uniform(-20.0, 20.0);
      for (auto& v : st.phi[l]) v = rng.uniform(-20.0, 20.0);
    }
    try {
      const HierarchySolution sol = decode(st, p);
      if (!solution_violations(sol, p).empty()) ++bad;
      if (objective(sol, p) == kNegInf) ++bad;
      // iterate scans every array for NaN/+inf after each sweep
      for (int sweep = 0; sweep < 5; ++sweep) iterate(st, p, cfg);
      const HierarchySolution sol2 = decode(st, p);
      if (!solution_violations(sol2, p).empty()) ++bad;
      if (objective(sol2, p) == kNegInf) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  Result res;
  res.pass = bad == 0;
  res.detail = format("%d violations across 1000 randomized decode/sweep trials (need 0)",
                      bad);
  return res;
}

}  // namespace acceptance
