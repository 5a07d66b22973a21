#include <map>

#include "doctest.h"
#include "hap/eval.hpp"
#include "hap/solver.hpp"
#include "oracles/naive_hierarchy.hpp"
#include "oracles/test_instances.hpp"

using namespace hap;

TEST_CASE("exhaustive search on forced single-point instance") {
  LayeredProblem p(1, 2);
  p.set_c(0, 0, -1.0);
  p.set_c(1, 0, -1.0);
  const auto [sol, obj] = brute_force_map(p);
  CHECK(obj == -2.0);
  CHECK(sol.layers[1].exemplars == std::vector<int>{0});
}

TEST_CASE("two points, expensive exemplars: one cluster wins") {
  LayeredProblem p(2, 1);
  p.set_s(0, 0, 1, -1.0);
  p.set_s(0, 1, 0, -1.0);
  p.set_c(0, 0, -3.0);
  p.set_c(0, 1, -3.0);
  const auto [sol, obj] = brute_force_map(p);
  CHECK(obj == -4.0);  // one exemplar: -3 + -1; both: -6
  CHECK(sol.layers[0].exemplars.size() == 1);
}

TEST_CASE("two points, cheap exemplars: both stay exemplars") {
  LayeredProblem p(2, 1);
  p.set_s(0, 0, 1, -1.0);
  p.set_s(0, 1, 0, -1.0);
  p.set_c(0, 0, -0.5);
  p.set_c(0, 1, -0.5);
  const auto [sol, obj] = brute_force_map(p);
  CHECK(obj == -1.0);
  CHECK(sol.layers[0].exemplars == std::vector<int>{0, 1});
}

TEST_CASE("exhaustive search agrees with an independent enumerator") {
  Rng rng(55);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const int L = rng.uniform_int(1, 3);
    const LayeredProblem p = testutil::random_problem(n, L, rng, trial % 4 == 0 ? 0.3 : 0.0);
    double best = kNegInf;
    oracle::for_each_valid_config(p, [&](const oracle::Config& cfg) {
      best = std::max(best, oracle::naive_objective(cfg, p));
    });
    if (best == kNegInf) continue;  // no valid configuration reachable
    const auto [sol, obj] = brute_force_map(p);
    CHECK(obj == doctest::Approx(best).epsilon(1e-12));
    CHECK(solution_violations(sol, p).empty());
  }
}

TEST_CASE("exhaustive optimum dominates random valid solutions") {
  Rng rng(56);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const int L = rng.uniform_int(1, 3);
    const LayeredProblem p = testutil::random_problem(n, L, rng);
    const auto [sol, obj] = brute_force_map(p);
    for (int rep = 0; rep < 100; ++rep) {
      CHECK(objective(oracle::random_valid_solution(p, rng), p) <= obj + 1e-9);
    }
  }
}

TEST_CASE("size guard refuses big instances") {
  LayeredProblem p(9, 1);
  CHECK_THROWS_AS(brute_force_map(p), StructuralError);
  LayeredProblem q(2, 4);
  CHECK_THROWS_AS(brute_force_map(q), StructuralError);
}

namespace {

GenerationTree small_tree() {
  // root 0 (layer 3); children 1,2 (layer 2); leaves 3..6 (layer 1)
  GenerationTree tree;
  tree.kind = PayloadKind::kSequence;
  tree.num_layers = 3;
  tree.nodes.push_back({0, 3, -1, {}, "AAAA"});
  tree.nodes.push_back({1, 2, 0, {}, "AAAC"});
  tree.nodes.push_back({2, 2, 0, {}, "AAGG"});
  tree.nodes.push_back({3, 1, 1, {}, "AACC"});
  tree.nodes.push_back({4, 1, 1, {}, "TAAC"});
  tree.nodes.push_back({5, 1, 2, {}, "CAGG"});
  tree.nodes.push_back({6, 1, 2, {}, "ATGG"});
  return tree;
}

}  // namespace

TEST_CASE("perfect recovery scores precision = recall = 1") {
  const GenerationTree tree = small_tree();
  const HierarchySolution truth = truth_solution(tree);
  const PRPoint pr = precision_recall(truth, tree);
  REQUIRE(pr.precision.has_value());
  REQUIRE(pr.recall.has_value());
  CHECK(*pr.precision == 1.0);
  CHECK(*pr.recall == 1.0);
}

TEST_CASE("no exemplars above the bottom: recall zero, precision undefined") {
  const GenerationTree tree = small_tree();
  const int n = tree.size();
  HierarchySolution sol;  // nothing survives past layer 1
  sol.num_points = n;
  sol.layers.resize(3);
  auto& l0 = sol.layers[0];
  l0.active.resize(n);
  for (int i = 0; i < n; ++i) l0.active[i] = i;
  l0.assignment.assign(n, -1);
  for (int l = 1; l < 3; ++l) sol.layers[l].assignment.assign(n, -1);
  const PRPoint pr = precision_recall(sol, tree);
  CHECK_FALSE(pr.precision.has_value());
  REQUIRE(pr.recall.has_value());
  CHECK(*pr.recall == 0.0);
}

TEST_CASE("true positives plus misses count every internal node once") {
  const GenerationTree tree = small_tree();
  const int n = tree.size();
  // collapse everything onto point 0 immediately: point 0 stays active to
  // the top (one prediction, at the top layer), all other internal nodes
  // are missed
  HierarchySolution sol;
  sol.num_points = n;
  sol.layers.resize(3);
  auto& l0 = sol.layers[0];
  l0.active.resize(n);
  for (int i = 0; i < n; ++i) l0.active[i] = i;
  l0.exemplars = {0};
  l0.assignment.assign(n, 0);
  for (int l = 1; l < 3; ++l) {
    sol.layers[l].active = {0};
    sol.layers[l].exemplars = {0};
    sol.layers[l].assignment.assign(n, -1);
    sol.layers[l].assignment[0] = 0;
  }
  const PRPoint pr = precision_recall(sol, tree);
  // the tree has 3 internal nodes (ids 0,1,2); point 0 is predicted at its
  // true origin (the top layer), so TP = 1, FN = 2, recall = 1/3
  REQUIRE(pr.recall.has_value());
  CHECK(*pr.recall == doctest::Approx(1.0 / 3.0));
  REQUIRE(pr.precision.has_value());
  CHECK(*pr.precision == 1.0);
}

TEST_CASE("rand index: identity and a disagreeing pair") {
  const GenerationTree tree = small_tree();
  const HierarchySolution truth = truth_solution(tree);
  for (int l = 0; l < 3; ++l) CHECK(rand_index(truth, tree, l) == 1.0);

  // two-point universe: siblings in pred, non-siblings in truth
  GenerationTree two;
  two.kind = PayloadKind::kSequence;
  two.num_layers = 1;
  two.nodes.push_back({0, 1, -1, {}, "AA"});
  two.nodes.push_back({1, 1, -1, {}, "CC"});
  HierarchySolution pred;
  pred.num_points = 2;
  pred.layers.resize(1);
  pred.layers[0].active = {0, 1};
  pred.layers[0].exemplars = {0};
  pred.layers[0].assignment = {0, 0};
  CHECK(rand_index(pred, two, 0) == 0.0);  // truth keeps them apart
}

TEST_CASE("rand index matches a naive pair count on random hierarchies") {
  Rng rng(60);
  GenSeqConfig cfg;
  cfg.generations = 3;
  cfg.children_mean = 4.0;
  cfg.rng_seed = 4;
  const GenerationTree tree = gen_sequences(cfg);
  const int n = tree.size();
  REQUIRE(n >= 6);
  std::vector<std::vector<double>> prefs(3, std::vector<double>(n, -2.0));
  const LayeredProblem p = problem_from_sequences(tree, 3, prefs);
  const HierarchySolution truth = truth_solution(tree);
  for (int rep = 0; rep < 10; ++rep) {
    const HierarchySolution pred = oracle::random_valid_solution(p, rng);
    for (int layer = 0; layer < 3; ++layer) {
      // naive O(n^2) agreement count over composed labels
      auto labels = [&](const HierarchySolution& s) {
        std::vector<int> lab(n);
        for (int i = 0; i < n; ++i) {
          int cur = i;
          for (int m = 0; m <= layer; ++m) cur = s.layers[m].assignment[cur];
          lab[i] = cur;
        }
        return lab;
      };
      const std::vector<int> a = labels(pred), b = labels(truth);
      long agree = 0, total = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          ++total;
          if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
        }
      }
      const double expected = static_cast<double>(agree) / total;
      CHECK(rand_index(pred, tree, layer) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("rand index is symmetric in its two hierarchies") {
  const GenerationTree a = small_tree();
  GenerationTree b = small_tree();
  // reattach leaves 4 and 5 to the opposite families
  b.nodes[4].parent = 2;
  b.nodes[5].parent = 1;
  for (int layer = 0; layer < 3; ++layer) {
    const double ab = rand_index(truth_solution(a), b, layer);
    const double ba = rand_index(truth_solution(b), a, layer);
    CHECK(ab == ba);
  }
}

TEST_CASE("objective comparison table") {
  LayeredProblem p(2, 1);
  p.set_s(0, 0, 1, -1.0);
  p.set_s(0, 1, 0, -1.0);
  p.set_c(0, 0, -3.0);
  p.set_c(0, 1, -3.0);
  HierarchySolution one;  // objective -4
  one.num_points = 2;
  one.layers.resize(1);
  one.layers[0].active = {0, 1};
  one.layers[0].exemplars = {0};
  one.layers[0].assignment = {0, 0};
  HierarchySolution both;  // objective -6
  both.num_points = 2;
  both.layers.resize(1);
  both.layers[0].active = {0, 1};
  both.layers[0].exemplars = {0, 1};
  both.layers[0].assignment = {0, 1};

  auto rows = compare_objectives({{"hap", one}, {"greedy", both}}, p, "greedy");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].method == "hap");
  CHECK(rows[0].objective_value == -4.0);
  REQUIRE(rows[0].improvement_pct.has_value());
  // 100 * (-4 - -6) / 6
  CHECK(*rows[0].improvement_pct == doctest::Approx(100.0 * 2.0 / 6.0));
  CHECK(*rows[1].improvement_pct == doctest::Approx(0.0));

  // identical solutions improve by exactly zero
  auto same = compare_objectives({{"a", one}, {"greedy", one}}, p, "greedy");
  CHECK(*same[0].improvement_pct == 0.0);

  // invalid entries are flagged and excluded
  HierarchySolution broken = one;
  broken.layers[0].assignment[1] = 1;  // points at a non-exemplar... itself
  auto flagged = compare_objectives({{"bad", broken}, {"greedy", one}}, p, "greedy");
  CHECK(flagged.back().objective_value == kNegInf);
  CHECK_FALSE(flagged.back().improvement_pct.has_value());
}
