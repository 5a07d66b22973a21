#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "json.hpp"

namespace hapcli {

namespace {

using nlohmann::json;

struct Instance {
  int seed = 0;
  hap::LayeredProblem problem;  // preferences overwritten per setting
  std::optional<hap::GenerationTree> tree;
};

struct SweepPlan {
  std::string gen_kind;  // "", "2d" or "seq"
  std::string problem_path;
  hap::Gen2DConfig cfg2d;
  hap::GenSeqConfig cfgseq;
  int seeds = 1;
  int settings = 0;  // 0: derive from prefs/top-values/problem
  PrefFlags prefs;
  std::vector<double> top_values;
  std::vector<std::string> methods{"hap", "greedy"};
  std::vector<int> k_explicit;
  int restarts = 100;
  SolverFlags solver;
  std::string out_dir;
  int jobs = 0;
  bool write_problems = false;
};

struct RunRow {
  int setting = 0;
  int instance = 0;
  std::string method;
  int n = 0, layers = 0;
  double objective_value = 0.0;
  bool converged = false;
  int iterations = 0;
  double wall_ms = 0.0;
  std::string clusters;
  std::string prefs;
  std::string error;
};

std::vector<std::vector<double>> setting_prefs(const SweepPlan& plan,
                                               const hap::LayeredProblem& p,
                                               int setting) {
  const int L = p.num_layers();
  const int n = p.num_points();
  if (!plan.top_values.empty()) {
    if (static_cast<int>(plan.prefs.explicit_prefs.size()) != L) {
      throw hap::StructuralError("--top-values needs --prefs for the lower layers");
    }
    std::vector<std::vector<double>> out(L);
    for (int l = 0; l < L; ++l) out[l].assign(n, plan.prefs.explicit_prefs[l]);
    out[L - 1].assign(n, plan.top_values[setting]);
    return out;
  }
  if (!plan.prefs.explicit_prefs.empty()) {
    return plan.prefs.make(p, 0);
  }
  if (plan.settings > 0) {
    return plan.prefs.make(p, hap::Rng::splitmix64(plan.prefs.pref_seed +
                                                   0x9E3779B97F4A7C15ULL * setting));
  }
  // keep the preferences already in the problem file
  std::vector<std::vector<double>> out(L);
  for (int l = 0; l < L; ++l) out[l] = p.layer_pref(l);
  return out;
}

std::string run_file(const std::string& dir, int setting, int instance,
                     const std::string& method) {
  std::ostringstream s;
  s << dir << "/s" << setting << "_i" << instance << "_" << method << ".json";
  return s.str();
}

void execute(const SweepPlan& plan) {
  namespace fs = std::filesystem;
  fs::create_directories(plan.out_dir);

  // instances are generated up front, deterministically
  std::vector<Instance> instances;
  if (!plan.problem_path.empty()) {
    Instance inst;
    inst.seed = 0;
    inst.problem = hap::io::read_problem(plan.problem_path).problem;
    instances.push_back(std::move(inst));
  } else {
    for (int s = 0; s < plan.seeds; ++s) {
      Instance inst;
      inst.seed = s;
      if (plan.gen_kind == "2d") {
        hap::Gen2DConfig cfg = plan.cfg2d;
        cfg.rng_seed = s;
        inst.tree = hap::gen_2d(cfg);
        std::vector<std::vector<double>> zeros(
            cfg.num_layers, std::vector<double>(inst.tree->size(), 0.0));
        inst.problem = hap::problem_from_2d(*inst.tree, cfg.num_layers, zeros);
      } else {
        hap::GenSeqConfig cfg = plan.cfgseq;
        cfg.rng_seed = s;
        inst.tree = hap::gen_sequences(cfg);
        std::vector<std::vector<double>> zeros(
            cfg.generations, std::vector<double>(inst.tree->size(), 0.0));
        inst.problem = hap::problem_from_sequences(*inst.tree, cfg.generations, zeros,
                                                   cfg.mutations_mean);
      }
      instances.push_back(std::move(inst));
    }
  }

  int n_settings = 1;
  if (!plan.top_values.empty()) {
    n_settings = static_cast<int>(plan.top_values.size());
  } else if (plan.settings > 0) {
    n_settings = plan.settings;
  }

  struct Job {
    int setting;
    int instance;
  };
  std::vector<Job> jobs;
  for (int s = 0; s < n_settings; ++s) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      jobs.push_back({s, static_cast<int>(i)});
    }
  }
  std::vector<std::vector<RunRow>> rows(jobs.size());

  const auto worker_body = [&](const Job& job) {
    const Instance& inst = instances[job.instance];
    hap::LayeredProblem p = inst.problem;
    const auto prefs = setting_prefs(plan, p, job.setting);
    for (int l = 0; l < p.num_layers(); ++l) p.set_layer_pref(l, prefs[l]);
    const std::string pref_str = prefs_to_string(prefs);
    if (plan.write_problems) {
      json meta;
      meta["setting"] = job.setting;
      meta["instance_seed"] = inst.seed;
      hap::io::write_problem(
          plan.out_dir + "/s" + std::to_string(job.setting) + "_i" +
              std::to_string(job.instance) + "_problem.json",
          p, meta.dump());
    }

    hap::SolverConfig cfg = plan.solver.config(p.num_layers());
    std::optional<hap::KPerLayer> k;
    if (!plan.k_explicit.empty()) k = plan.k_explicit;
    std::optional<hap::PointCloud> cloud;
    if (inst.tree) cloud = hap::featurize(*inst.tree);

    std::optional<hap::KPerLayer> k_from_hap;
    for (const std::string& method : plan.methods) {
      RunRow row;
      row.setting = job.setting;
      row.instance = inst.seed;
      row.method = method;
      row.n = p.num_points();
      row.layers = p.num_layers();
      row.prefs = pref_str;
      try {
        std::optional<hap::KPerLayer> use_k = k;
        if (!use_k && (method == "hkmedians" || method == "hkmeans")) {
          use_k = k_from_hap;  // the counts hap discovered for this setting
          if (!use_k) {
            throw hap::StructuralError(
                "k-methods need --k or a hap run in the same sweep");
          }
        }
        const MethodRun run = run_method(method, p, cfg, use_k, plan.restarts, cloud);
        if (method == "hap") k_from_hap = run.solution.cluster_counts();
        row.objective_value = run.objective_value;
        row.converged = run.converged;
        row.iterations = run.iterations;
        row.wall_ms = run.wall_ms;
        row.clusters = counts_to_string(run.solution.cluster_counts());

        hap::io::SolutionMeta meta;
        meta.method = method;
        meta.objective_value = run.objective_value;
        meta.converged = run.converged;
        meta.iterations = run.iterations;
        meta.layers_fixed = run.layers_fixed;
        meta.config_json = hap::io::config_to_json(cfg);
        hap::io::write_solution(run_file(plan.out_dir, job.setting, job.instance, method),
                                run.solution, meta);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows[&job - jobs.data()].push_back(std::move(row));
    }
  };

  int n_jobs = plan.jobs;
  if (n_jobs <= 0) {
    const char* env = std::getenv("HAP_JOBS");
    n_jobs = env ? std::atoi(env) : 1;
    if (n_jobs <= 0) n_jobs = 1;
  }
  n_jobs = std::min<int>(n_jobs, static_cast<int>(jobs.size()));

  std::atomic<std::size_t> next{0};
  auto pump = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= jobs.size()) return;
      worker_body(jobs[t]);
    }
  };
  if (n_jobs <= 1) {
    pump();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_jobs; ++t) pool.emplace_back(pump);
    for (auto& th : pool) th.join();
  }

  // aggregate, ordered by setting then instance then method order
  std::ostringstream text;
  hap::io::CsvWriter csv(text);
  csv.row({"setting_id", "instance_seed", "method", "n", "layers", "objective",
           "converged", "iterations", "wall_ms", "clusters", "prefs", "error"});
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::size_t ok_runs = 0, failed_runs = 0;
  for (const auto& job_rows : rows) {
    for (const RunRow& row : job_rows) {
      csv.row({std::to_string(row.setting), std::to_string(row.instance), row.method,
               std::to_string(row.n), std::to_string(row.layers),
               row.error.empty() ? fmt(row.objective_value) : "",
               row.error.empty() ? (row.converged ? "1" : "0") : "",
               std::to_string(row.iterations), fmt(row.wall_ms), row.clusters,
               row.prefs, row.error});
      if (row.error.empty()) {
        ++ok_runs;
      } else {
        ++failed_runs;
      }
    }
  }
  hap::io::atomic_write_text(plan.out_dir + "/aggregate.csv", text.str());
  std::printf("sweep: %zu runs ok, %zu failed, aggregate at %s/aggregate.csv\n",
              ok_runs, failed_runs, plan.out_dir.c_str());
}

}  // namespace

void register_sweep(CLI::App& app, int& exit_code) {
  auto plan = std::make_shared<SweepPlan>();
  CLI::App* cmd = app.add_subcommand(
      "sweep", "run methods across preference settings and instances");

  cmd->add_option("--problem", plan->problem_path, "problem file to sweep over");
  cmd->add_option("--gen", plan->gen_kind, "generate instances: 2d or seq")
      ->check(CLI::IsMember({"2d", "seq"}));
  cmd->add_option("--seeds", plan->seeds, "number of generated instances (seeds 0..N-1)")
      ->check(CLI::PositiveNumber);
  // generator shape flags (apply to whichever generator --gen picks)
  cmd->add_option("--total", plan->cfg2d.total_points)->check(CLI::PositiveNumber);
  cmd->add_option("--layers", plan->cfg2d.num_layers)->check(CLI::Range(1, 7));
  cmd->add_option("--generations", plan->cfgseq.generations)->check(CLI::PositiveNumber);
  cmd->add_option("--children-mean", plan->cfgseq.children_mean)->check(CLI::PositiveNumber);
  cmd->add_option("--mutations-mean", plan->cfgseq.mutations_mean)->check(CLI::PositiveNumber);

  cmd->add_option("--settings", plan->settings, "random preference settings per instance");
  plan->prefs.attach(cmd);
  cmd->add_option("--top-values", plan->top_values,
                  "sweep the top-layer preference over these values (needs --prefs)")
      ->delimiter(',');
  cmd->add_option("--methods", plan->methods, "comma list of methods to run")
      ->delimiter(',');
  cmd->add_option("--k", plan->k_explicit, "per-layer counts for the k-methods")
      ->delimiter(',');
  cmd->add_option("--restarts", plan->restarts)->check(CLI::PositiveNumber);
  cmd->add_option("--out", plan->out_dir, "output directory")->required();
  cmd->add_option("--jobs", plan->jobs, "concurrent runs (default HAP_JOBS or 1)");
  cmd->add_flag("--write-problems", plan->write_problems,
                "also write the per-setting problem files");
  plan->solver.attach(cmd);

  cmd->callback([plan, &exit_code] {
    if (plan->problem_path.empty() == plan->gen_kind.empty()) {
      throw CLI::ValidationError("sweep", "give exactly one of --problem or --gen");
    }
    execute(*plan);
    exit_code = kOk;
  });
}

}  // namespace hapcli
