#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hap/io.hpp"
#include "oracles/test_instances.hpp"

using namespace hap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("hap-io-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("problem files round-trip bitwise, including forbidden entries") {
  TempDir dir;
  Rng rng(301);
  for (int trial = 0; trial < 5; ++trial) {
    LayeredProblem p = testutil::random_problem(rng.uniform_int(2, 7),
                                                rng.uniform_int(1, 3), rng, 0.3);
    // throw in awkward magnitudes
    p.set_s(0, 0, 1, -1.0e-17);
    p.set_s(0, 1, 0, -123456789.123456789);
    const std::string path = dir.file("p.json");
    io::write_problem(path, p, R"({"note":"round-trip"})");
    const io::ProblemBundle back = io::read_problem(path);
    REQUIRE(back.problem.num_points() == p.num_points());
    REQUIRE(back.problem.num_layers() == p.num_layers());
    for (int l = 0; l < p.num_layers(); ++l) {
      CHECK(back.problem.layer_sim(l) == p.layer_sim(l));
      CHECK(back.problem.layer_pref(l) == p.layer_pref(l));
    }
    CHECK(back.metadata_json.find("round-trip") != std::string::npos);
  }
}

TEST_CASE("sparse problem input fills unlisted entries with -inf") {
  TempDir dir;
  const std::string path = dir.file("sparse.json");
  std::ofstream(path) << R"({
    "format": "hap-problem-v1", "n": 3, "layers": 1, "sparse": true,
    "similarities": [[{"i":0,"j":1,"value":-2.5},{"i":1,"j":0,"value":-2.5}]],
    "preferences": [[-1,-1,-1]]
  })";
  const io::ProblemBundle b = io::read_problem(path);
  CHECK(b.problem.s(0, 0, 1) == -2.5);
  CHECK(b.problem.s(0, 0, 2) == kNegInf);
  CHECK(b.problem.s(0, 2, 2) == 0.0);  // implied diagonal
}

TEST_CASE("invalid problem files are rejected with IoError") {
  TempDir dir;
  const std::string path = dir.file("bad.json");
  std::ofstream(path) << R"({"format":"hap-problem-v1","n":2,"layers":1,
    "similarities":[[0,-1,-1,0.5]],"preferences":[[-1,-1]]})";
  CHECK_THROWS_AS(io::read_problem(path), IoError);  // nonzero diagonal
  std::ofstream(dir.file("garbled.json")) << "{nope";
  CHECK_THROWS_AS(io::read_problem(dir.file("garbled.json")), IoError);
  CHECK_THROWS_AS(io::read_problem(dir.file("missing.json")), IoError);
}

TEST_CASE("solution files round-trip") {
  TempDir dir;
  HierarchySolution sol;
  sol.num_points = 3;
  sol.layers.resize(2);
  sol.layers[0] = {{0, 1, 2}, {0, 2}, {0, 0, 2}};
  sol.layers[1] = {{0, 2}, {0}, {0, -1, 0}};
  io::SolutionMeta meta;
  meta.method = "hap";
  meta.objective_value = -7.25;
  meta.converged = true;
  meta.iterations = 42;
  meta.config_json = io::config_to_json(SolverConfig{});
  const std::string path = dir.file("s.json");
  io::write_solution(path, sol, meta);
  const io::SolutionBundle back = io::read_solution(path);
  CHECK(back.solution.exemplar_sets() == sol.exemplar_sets());
  for (int l = 0; l < 2; ++l) {
    CHECK(back.solution.layers[l].active == sol.layers[l].active);
    CHECK(back.solution.layers[l].assignment == sol.layers[l].assignment);
  }
  CHECK(back.meta.method == "hap");
  CHECK(back.meta.objective_value == -7.25);
  CHECK(back.meta.iterations == 42);
}

TEST_CASE("trees round-trip for both payload kinds") {
  TempDir dir;
  Gen2DConfig gc;
  gc.total_points = 30;
  gc.num_layers = 2;
  const GenerationTree t2 = gen_2d(gc);
  io::write_tree(dir.file("t2.json"), t2, "{}");
  const GenerationTree t2b = io::read_tree(dir.file("t2.json"));
  REQUIRE(t2b.size() == t2.size());
  for (int i = 0; i < t2.size(); ++i) {
    CHECK(t2b.nodes[i].parent == t2.nodes[i].parent);
    CHECK(t2b.nodes[i].point == t2.nodes[i].point);
    CHECK(t2b.nodes[i].layer_of_origin == t2.nodes[i].layer_of_origin);
  }

  GenSeqConfig sc;
  sc.generations = 2;
  sc.rng_seed = 10;
  const GenerationTree ts = gen_sequences(sc);
  io::write_tree(dir.file("ts.json"), ts, "{}");
  const GenerationTree tsb = io::read_tree(dir.file("ts.json"));
  REQUIRE(tsb.size() == ts.size());
  for (int i = 0; i < ts.size(); ++i) {
    CHECK(tsb.nodes[i].seq == ts.nodes[i].seq);
    CHECK(tsb.nodes[i].mutations == ts.nodes[i].mutations);
  }
  CHECK(tsb.kind == PayloadKind::kSequence);
}

TEST_CASE("coords files round-trip and trees featurize on read") {
  TempDir dir;
  PointCloud cloud;
  cloud.dim = 2;
  cloud.coords = {{0.5, -1.25}, {3.0, 4.0}};
  io::write_coords(dir.file("c.json"), cloud);
  const PointCloud back = io::read_coords_or_tree(dir.file("c.json"));
  CHECK(back.dim == 2);
  CHECK(back.coords == cloud.coords);

  GenSeqConfig sc;
  sc.generations = 2;
  const GenerationTree ts = gen_sequences(sc);
  io::write_tree(dir.file("tree.json"), ts, "{}");
  const PointCloud feat = io::read_coords_or_tree(dir.file("tree.json"));
  CHECK(feat.dim == 160);
  CHECK(feat.size() == ts.size());
}

TEST_CASE("csv quoting follows the usual rules") {
  std::ostringstream out;
  io::CsvWriter csv(out);
  csv.row({"plain", "with,comma", "with\"quote", "multi\nline"});
  CHECK(out.str() == "plain,\"with,comma\",\"with\"\"quote\",\"multi\nline\"\r\n");
}

TEST_CASE("solver config round-trips through json") {
  SolverConfig cfg;
  cfg.damping = 0.9;
  cfg.schedule = Schedule::kFixBottom;
  cfg.fix_period = 123;
  cfg.rng_seed = 77;
  cfg.tie_jitter = true;
  const SolverConfig back = io::config_from_json(io::config_to_json(cfg));
  CHECK(back.damping == 0.9);
  CHECK(back.schedule == Schedule::kFixBottom);
  CHECK(back.fix_period == 123);
  CHECK(back.rng_seed == 77);
  CHECK(back.tie_jitter == true);
}
