#include "doctest.h"
#include "hap/rng.hpp"
#include "hap/solution.hpp"
#include "oracles/naive_hierarchy.hpp"
#include "oracles/test_instances.hpp"

using namespace hap;

namespace {

HierarchySolution single_point_solution(int layers) {
  HierarchySolution sol;
  sol.num_points = 1;
  sol.layers.resize(layers);
  for (auto& la : sol.layers) {
    la.active = {0};
    la.exemplars = {0};
    la.assignment = {0};
  }
  return sol;
}

}  // namespace

TEST_CASE("single point, single layer: objective is the preference") {
  LayeredProblem p(1, 1);
  p.set_c(0, 0, -2.0);
  CHECK(objective(single_point_solution(1), p) == -2.0);
}

TEST_CASE("broken nesting scores -inf") {
  LayeredProblem p(2, 2);
  p.set_s(0, 0, 1, -1.0);
  p.set_s(0, 1, 0, -1.0);
  HierarchySolution sol;
  sol.num_points = 2;
  sol.layers.resize(2);
  sol.layers[0] = {{0, 1}, {0}, {0, 0}};
  // layer 1 activates a point that was not an exemplar below
  sol.layers[1] = {{1}, {1}, {-1, 1}};
  CHECK(objective(sol, p) == kNegInf);
  CHECK_FALSE(solution_violations(sol, p).empty());
}

TEST_CASE("dimension mismatch throws") {
  LayeredProblem p(2, 1);
  CHECK_THROWS_AS(objective(single_point_solution(1), p), StructuralError);
}

TEST_CASE("objective matches a naive transcription on random valid solutions") {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const int L = rng.uniform_int(1, 3);
    LayeredProblem p = testutil::random_problem(n, L, rng, 0.0, /*dyadic=*/true);
    for (int rep = 0; rep < 10; ++rep) {
      HierarchySolution sol = oracle::random_valid_solution(p, rng);
      oracle::Config cfg;
      cfg.is_exemplar.assign(L, std::vector<char>(n, 0));
      cfg.assign.assign(L, std::vector<int>(n, -1));
      for (int l = 0; l < L; ++l) {
        cfg.assign[l] = sol.layers[l].assignment;
        for (int j : sol.layers[l].exemplars) cfg.is_exemplar[l][j] = 1;
      }
      // dyadic inputs: both accumulation orders are exact
      CHECK(objective(sol, p) == oracle::naive_objective(cfg, p));
    }
  }
}

TEST_CASE("raising an exemplar's preference raises the objective by that amount") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const int L = rng.uniform_int(1, 3);
    LayeredProblem p = testutil::random_problem(n, L, rng, 0.0, /*dyadic=*/true);
    HierarchySolution sol = oracle::random_valid_solution(p, rng);
    const double before = objective(sol, p);
    const int l = rng.uniform_int(0, L - 1);
    const auto& ex = sol.layers[l].exemplars;
    const int j = ex[rng.uniform_int(0, static_cast<int>(ex.size()) - 1)];
    const double delta = 1.25;
    p.set_c(l, j, p.c(l, j) + delta);
    CHECK(objective(sol, p) == before + delta);
  }
}

TEST_CASE("shifting all selected terms shifts every configuration consistently") {
  // adding delta to every off-diagonal similarity and every preference moves
  // a configuration's objective by delta times its number of selected terms
  Rng rng(99);
  for (double delta : {-1.0, 1.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = rng.uniform_int(2, 5);
      const int L = rng.uniform_int(1, 3);
      LayeredProblem p = testutil::random_problem(n, L, rng, 0.0, /*dyadic=*/true);
      LayeredProblem shifted = p;
      for (int l = 0; l < L; ++l) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (i != j) shifted.set_s(l, i, j, p.s(l, i, j) + delta);
          }
          shifted.set_c(l, i, p.c(l, i) + delta);
        }
      }
      HierarchySolution sol = oracle::random_valid_solution(p, rng);
      long terms = 0;
      for (int l = 0; l < L; ++l) {
        // each non-exemplar active point selects one similarity term,
        // each exemplar one preference term
        terms += static_cast<long>(sol.layers[l].active.size());
      }
      CHECK(objective(sol, shifted) == objective(sol, p) + delta * terms);
    }
  }
}
