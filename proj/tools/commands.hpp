#pragma once

#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hap/baselines.hpp"
#include "hap/datagen.hpp"
#include "hap/io.hpp"
#include "hap/solver.hpp"

namespace hapcli {

// documented exit contract
enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kNumerical = 3,
  kNonConverged = 4,
};

struct SolverFlags {
  double damping = 0.5;
  int max_iterations = -1;  // -1: pick a default from the schedule
  int window = 50;
  std::string schedule = "plain";
  int period = 500;
  std::uint64_t seed = 0;
  bool jitter = false;

  void attach(CLI::App* cmd);
  hap::SolverConfig config(int num_layers) const;
};

struct PrefFlags {
  double lo = -0.3;
  double hi = -0.04;
  std::string scale = "auto";  // multiplier, or "auto" = median |s| / 0.17
  std::uint64_t pref_seed = 0;
  std::vector<double> explicit_prefs;  // per-layer constants, bottom first

  void attach(CLI::App* cmd);
  double resolve_scale(const hap::LayeredProblem& p) const;
  // explicit values if given, otherwise a seeded decreasing draw
  std::vector<std::vector<double>> make(const hap::LayeredProblem& p,
                                        std::uint64_t draw_seed) const;
};

struct MethodRun {
  hap::HierarchySolution solution;
  double objective_value = 0.0;
  bool converged = true;
  int iterations = 0;
  int layers_fixed = 0;
  double wall_ms = 0.0;
};

// Runs one method on one problem. k is required for the k-based baselines;
// cloud is required for hkmeans.
MethodRun run_method(const std::string& method, const hap::LayeredProblem& problem,
                     const hap::SolverConfig& cfg,
                     const std::optional<hap::KPerLayer>& k, int restarts,
                     const std::optional<hap::PointCloud>& cloud);

std::string counts_to_string(const std::vector<int>& counts);
std::string prefs_to_string(const std::vector<std::vector<double>>& prefs);

void register_gen(CLI::App& app, int& exit_code);
void register_solve(CLI::App& app, int& exit_code);
void register_eval(CLI::App& app, int& exit_code);
void register_sweep(CLI::App& app, int& exit_code);

}  // namespace hapcli
