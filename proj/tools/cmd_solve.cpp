#include <cstdio>

#include "commands.hpp"

namespace hapcli {

void register_solve(CLI::App& app, int& exit_code) {
  auto method = std::make_shared<std::string>();
  auto problem_path = std::make_shared<std::string>();
  auto out_path = std::make_shared<std::string>();
  auto coords_path = std::make_shared<std::string>();
  auto k_values = std::make_shared<std::vector<int>>();
  auto restarts = std::make_shared<int>(100);
  auto flags = std::make_shared<SolverFlags>();

  CLI::App* cmd = app.add_subcommand("solve", "run one method on a problem file");
  cmd->add_option("--method", *method, "hap, greedy, hkmedians or hkmeans")
      ->required()
      ->check(CLI::IsMember({"hap", "greedy", "hkmedians", "hkmeans"}));
  cmd->add_option("--problem", *problem_path, "problem file")->required();
  cmd->add_option("--out", *out_path, "solution file to write")->required();
  cmd->add_option("--coords", *coords_path, "coords or tree file (hkmeans)");
  cmd->add_option("--k", *k_values, "per-layer cluster counts, bottom first")
      ->delimiter(',');
  cmd->add_option("--restarts", *restarts, "random restarts for the k-methods")
      ->check(CLI::PositiveNumber);
  flags->attach(cmd);

  cmd->callback([=, &exit_code] {
    const hap::io::ProblemBundle bundle = hap::io::read_problem(*problem_path);
    const hap::LayeredProblem& p = bundle.problem;
    const hap::SolverConfig cfg = flags->config(p.num_layers());

    std::optional<hap::KPerLayer> k;
    if (!k_values->empty()) k = *k_values;
    std::optional<hap::PointCloud> cloud;
    if (!coords_path->empty()) cloud = hap::io::read_coords_or_tree(*coords_path);

    const MethodRun run = run_method(*method, p, cfg, k, *restarts, cloud);

    hap::io::SolutionMeta meta;
    meta.method = *method;
    meta.objective_value = run.objective_value;
    meta.converged = run.converged;
    meta.iterations = run.iterations;
    meta.layers_fixed = run.layers_fixed;
    meta.config_json = hap::io::config_to_json(cfg);
    hap::io::write_solution(*out_path, run.solution, meta);

    std::printf("%s: objective %.17g, clusters per layer %s, %s after %d sweeps\n",
                method->c_str(), run.objective_value,
                counts_to_string(run.solution.cluster_counts()).c_str(),
                run.converged ? "converged" : "NOT converged", run.iterations);
    exit_code = run.converged ? kOk : kNonConverged;
  });
}

}  // namespace hapcli
