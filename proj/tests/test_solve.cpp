#include "doctest.h"
#include "hap/baselines.hpp"
#include "hap/datagen.hpp"
#include "hap/eval.hpp"
#include "hap/solver.hpp"
#include "oracles/test_instances.hpp"

using namespace hap;

TEST_CASE("small seeded instance is solved to the exact optimum") {
  Rng rng(1);
  LayeredProblem p = testutil::random_problem(4, 2, rng, 0.0, false, -10.0, -5.0);
  for (int l = 0; l < 2; ++l) {
    for (int j = 0; j < 4; ++j) p.set_c(l, j, -5.0);
  }
  SolverConfig cfg;
  const SolveResult r = solve(p, cfg);
  const auto [best, best_obj] = brute_force_map(p);
  CHECK(r.trace.converged);
  CHECK(objective(r.solution, p) == doctest::Approx(best_obj).epsilon(1e-12));
  CHECK(r.solution.exemplar_sets() == best.exemplar_sets());
  for (int l = 0; l < 2; ++l) {
    CHECK(r.solution.layers[l].assignment == best.layers[l].assignment);
  }
}

TEST_CASE("re-solving from a converged state with zero iterations is a no-op") {
  Rng rng(3);
  LayeredProblem p = testutil::random_problem(6, 2, rng);
  SolverConfig cfg;
  const SolveResult first = solve(p, cfg);
  REQUIRE(first.trace.converged);
  SolverConfig frozen = cfg;
  frozen.max_iterations = 0;
  const SolveResult again = solve(p, frozen, first.state);
  CHECK(again.solution.exemplar_sets() == first.solution.exemplar_sets());
  for (int l = 0; l < 2; ++l) {
    CHECK(again.solution.layers[l].assignment == first.solution.layers[l].assignment);
  }
}

TEST_CASE("hap beats or matches greedy on a generated two-layer instance") {
  Gen2DConfig gc;
  gc.total_points = 20;
  gc.num_layers = 2;
  gc.rng_seed = 7;
  const GenerationTree tree = gen_2d(gc);
  std::vector<std::vector<double>> prefs = {
      std::vector<double>(tree.size(), -4.0),
      std::vector<double>(tree.size(), -8.0),
  };
  const LayeredProblem p = problem_from_2d(tree, 2, prefs);
  SolverConfig cfg;
  const SolveResult r = solve(p, cfg);
  const HierarchySolution g = greedy_hap(p, cfg);
  if (r.trace.converged) {
    CHECK(objective(r.solution, p) >= objective(g, p) - 1e-9);
  }
}

TEST_CASE("fix-bottom schedule pins layers and terminates") {
  Rng rng(11);
  LayeredProblem p = testutil::random_problem(10, 3, rng);
  SolverConfig cfg;
  cfg.schedule = Schedule::kFixBottom;
  cfg.fix_period = 20;
  cfg.max_iterations = 200;
  cfg.convergence_window = 1000;  // force the schedule to do the stopping
  const SolveResult r = solve(p, cfg);
  CHECK(r.trace.converged);
  CHECK(r.trace.layers_fixed == 3);
  CHECK(solution_violations(r.solution, p).empty());
  // the fixed decode is what the solution reports
  const HierarchySolution redecoded = decode(r.state, p);
  CHECK(redecoded.exemplar_sets() == r.solution.exemplar_sets());
}

TEST_CASE("trace records one decoded objective per sweep") {
  Rng rng(13);
  LayeredProblem p = testutil::random_problem(5, 2, rng);
  SolverConfig cfg;
  cfg.max_iterations = 40;
  cfg.convergence_window = 1000;
  const SolveResult r = solve(p, cfg);
  CHECK(r.trace.iterations == 40);
  CHECK(r.trace.objectives.size() == 40);
  for (double v : r.trace.objectives) CHECK(v > kNegInf);
}

TEST_CASE("solving an invalid problem throws") {
  LayeredProblem p(2, 1);
  p.set_s(0, 1, 1, -3.0);
  SolverConfig cfg;
  CHECK_THROWS_AS(solve(p, cfg), StructuralError);
}
