#include <chrono>
#include <cstdio>
#include <sstream>

#include "commands.hpp"

namespace hapcli {

void SolverFlags::attach(CLI::App* cmd) {
  cmd->add_option("--damping", damping, "message damping in [0,1)")
      ->check(CLI::Range(0.0, 0.999999));
  cmd->add_option("--max-iters", max_iterations, "sweep budget (default depends on schedule)");
  cmd->add_option("--window", window, "sweeps of stable decode that count as convergence")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--schedule", schedule, "plain or fix-bottom")
      ->check(CLI::IsMember({"plain", "fix-bottom"}));
  cmd->add_option("--period", period, "sweeps between layer fixes under fix-bottom")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", seed, "solver rng seed (jitter only)");
  cmd->add_flag("--jitter", jitter, "add seeded 1e-12 relative similarity jitter");
}

hap::SolverConfig SolverFlags::config(int num_layers) const {
  hap::SolverConfig cfg;
  cfg.damping = damping;
  cfg.convergence_window = window;
  cfg.schedule = schedule == "fix-bottom" ? hap::Schedule::kFixBottom
                                          : hap::Schedule::kPlain;
  cfg.fix_period = period;
  cfg.rng_seed = seed;
  cfg.tie_jitter = jitter;
  if (max_iterations >= 0) {
    cfg.max_iterations = max_iterations;
  } else {
    cfg.max_iterations = cfg.schedule == hap::Schedule::kFixBottom
                             ? cfg.fix_period * num_layers
                             : 2000;
  }
  return cfg;
}

void PrefFlags::attach(CLI::App* cmd) {
  cmd->add_option("--pref-lo", lo, "lower end of the preference draw");
  cmd->add_option("--pref-hi", hi, "upper end of the preference draw");
  cmd->add_option("--pref-scale", scale,
                  "preference multiplier, or 'auto' for median |s| / 0.17");
  cmd->add_option("--pref-seed", pref_seed, "seed of the preference draw");
  cmd->add_option("--prefs", explicit_prefs,
                  "explicit per-layer preference constants, bottom layer first")
      ->delimiter(',');
}

double PrefFlags::resolve_scale(const hap::LayeredProblem& p) const {
  if (scale == "auto") {
    // keep the drawn interval meaningful relative to the similarity scale
    return hap::median_abs_similarity(p) / 0.17;
  }
  return std::stod(scale);
}

std::vector<std::vector<double>> PrefFlags::make(const hap::LayeredProblem& p,
                                                 std::uint64_t draw_seed) const {
  const int L = p.num_layers();
  const int n = p.num_points();
  if (!explicit_prefs.empty()) {
    if (static_cast<int>(explicit_prefs.size()) != L) {
      throw hap::StructuralError("--prefs needs one value per layer");
    }
    std::vector<std::vector<double>> out(L);
    for (int l = 0; l < L; ++l) out[l].assign(n, explicit_prefs[l]);
    return out;
  }
  hap::Rng rng(draw_seed);
  return hap::draw_decreasing_preferences(rng, L, n, lo, hi, resolve_scale(p));
}

MethodRun run_method(const std::string& method, const hap::LayeredProblem& problem,
                     const hap::SolverConfig& cfg,
                     const std::optional<hap::KPerLayer>& k, int restarts,
                     const std::optional<hap::PointCloud>& cloud) {
  MethodRun out;
  const auto start = std::chrono::steady_clock::now();
  if (method == "hap") {
    hap::SolveResult r = hap::solve(problem, cfg);
    out.solution = std::move(r.solution);
    out.converged = r.trace.converged;
    out.iterations = r.trace.iterations;
    out.layers_fixed = r.trace.layers_fixed;
  } else if (method == "greedy") {
    hap::GreedyInfo info;
    out.solution = hap::greedy_hap(problem, cfg, &info);
    out.converged = info.converged;
    out.iterations = info.iterations;
  } else if (method == "hkmedians") {
    if (!k) throw hap::StructuralError("hkmedians needs per-layer cluster counts");
    out.solution = hap::hk_medians(problem, *k, restarts, cfg.rng_seed);
  } else if (method == "hkmeans") {
    if (!k) throw hap::StructuralError("hkmeans needs per-layer cluster counts");
    if (!cloud) throw hap::StructuralError("hkmeans needs a coords (or tree) file");
    out.solution = hap::hk_means(*cloud, *k, restarts, cfg.rng_seed);
  } else {
    throw hap::StructuralError("unknown method: " + method);
  }
  const auto stop = std::chrono::steady_clock::now();
  out.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  out.objective_value = hap::objective(out.solution, problem);
  return out;
}

std::string counts_to_string(const std::vector<int>& counts) {
  std::ostringstream s;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (t) s << ';';
    s << counts[t];
  }
  return s.str();
}

std::string prefs_to_string(const std::vector<std::vector<double>>& prefs) {
  std::ostringstream s;
  s.precision(17);
  for (std::size_t t = 0; t < prefs.size(); ++t) {
    if (t) s << ';';
    s << (prefs[t].empty() ? 0.0 : prefs[t][0]);
  }
  return s.str();
}

}  // namespace hapcli
