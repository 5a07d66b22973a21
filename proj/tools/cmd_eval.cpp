#include <cstdio>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "hap/eval.hpp"

namespace hapcli {

namespace {

void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream text;
  hap::io::CsvWriter csv(text);
  for (const auto& row : rows) csv.row(row);
  hap::io::atomic_write_text(path, text.str());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void register_eval(CLI::App& app, int& exit_code) {
  CLI::App* eval = app.add_subcommand("eval", "score solutions and run the exhaustive oracle");
  eval->require_subcommand(1);

  // --- objective ---
  {
    auto problem = std::make_shared<std::string>();
    auto solution = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>();
    CLI::App* c = eval->add_subcommand("objective", "recompute a solution's objective");
    c->add_option("--problem", *problem)->required();
    c->add_option("--solution", *solution)->required();
    c->add_option("--csv", *csv, "write method,objective to this file");
    c->callback([=, &exit_code] {
      const auto pb = hap::io::read_problem(*problem);
      const auto sb = hap::io::read_solution(*solution);
      const double obj = hap::objective(sb.solution, pb.problem);
      std::printf("method %s\nstored objective    %.17g\nrecomputed objective %.17g\n",
                  sb.meta.method.c_str(), sb.meta.objective_value, obj);
      if (!csv->empty()) {
        write_csv(*csv, {{"method", "objective"}, {sb.meta.method, fmt(obj)}});
      }
      exit_code = kOk;
    });
  }

  // --- rand ---
  {
    auto tree = std::make_shared<std::string>();
    auto solution = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>();
    CLI::App* c = eval->add_subcommand("rand", "per-layer Rand index against a tree");
    c->add_option("--tree", *tree)->required();
    c->add_option("--solution", *solution)->required();
    c->add_option("--csv", *csv);
    c->callback([=, &exit_code] {
      const auto t = hap::io::read_tree(*tree);
      const auto sb = hap::io::read_solution(*solution);
      const hap::RandReport report = hap::rand_report(sb.solution, t);
      std::vector<std::vector<std::string>> rows{{"layer", "rand_index"}};
      std::printf("layer  rand_index\n");
      for (std::size_t l = 0; l < report.per_layer.size(); ++l) {
        std::printf("%5zu  %.6f\n", l + 1, report.per_layer[l]);
        rows.push_back({std::to_string(l + 1), fmt(report.per_layer[l])});
      }
      std::printf(" mean  %.6f\n", report.mean);
      rows.push_back({"mean", fmt(report.mean)});
      if (!csv->empty()) write_csv(*csv, rows);
      exit_code = kOk;
    });
  }

  // --- pr ---
  {
    auto tree = std::make_shared<std::string>();
    auto solution = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>();
    auto setting = std::make_shared<std::string>("0");
    CLI::App* c = eval->add_subcommand("pr", "ancestor precision/recall against a tree");
    c->add_option("--tree", *tree)->required();
    c->add_option("--solution", *solution)->required();
    c->add_option("--setting-id", *setting);
    c->add_option("--csv", *csv);
    c->callback([=, &exit_code] {
      const auto t = hap::io::read_tree(*tree);
      const auto sb = hap::io::read_solution(*solution);
      hap::PRPoint pr = hap::precision_recall(sb.solution, t);
      pr.setting_id = *setting;
      const std::string ps = pr.precision ? fmt(*pr.precision) : "none";
      const std::string rs = pr.recall ? fmt(*pr.recall) : "none";
      std::printf("precision %s  recall %s\n", ps.c_str(), rs.c_str());
      if (!csv->empty()) {
        write_csv(*csv, {{"setting_id", "precision", "recall"}, {*setting, ps, rs}});
      }
      exit_code = kOk;
    });
  }

  // --- brute ---
  {
    auto problem = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>();
    CLI::App* c = eval->add_subcommand("brute", "exhaustive optimum of a tiny problem");
    c->add_option("--problem", *problem)->required();
    c->add_option("--out", *out, "write the maximizer as a solution file");
    c->add_option("--csv", *csv);
    c->callback([=, &exit_code] {
      const auto pb = hap::io::read_problem(*problem);
      const auto [sol, obj] = hap::brute_force_map(pb.problem);
      std::printf("optimum objective %.17g, clusters per layer %s\n", obj,
                  counts_to_string(sol.cluster_counts()).c_str());
      if (!out->empty()) {
        hap::io::SolutionMeta meta;
        meta.method = "brute";
        meta.objective_value = obj;
        hap::io::write_solution(*out, sol, meta);
      }
      if (!csv->empty()) {
        write_csv(*csv, {{"method", "objective"}, {"brute", fmt(obj)}});
      }
      exit_code = kOk;
    });
  }

  // --- compare ---
  {
    auto problem = std::make_shared<std::string>();
    auto solutions = std::make_shared<std::vector<std::string>>();
    auto baseline = std::make_shared<std::string>("greedy");
    auto csv = std::make_shared<std::string>();
    CLI::App* c = eval->add_subcommand("compare", "objective table across solution files");
    c->add_option("--problem", *problem)->required();
    c->add_option("--solution", *solutions, "solution files (repeatable)")
        ->required()
        ->take_all();
    c->add_option("--baseline", *baseline, "method id the improvement is measured against");
    c->add_option("--csv", *csv);
    c->callback([=, &exit_code] {
      const auto pb = hap::io::read_problem(*problem);
      std::vector<std::pair<std::string, hap::HierarchySolution>> entries;
      for (const auto& path : *solutions) {
        auto sb = hap::io::read_solution(path);
        entries.emplace_back(sb.meta.method, std::move(sb.solution));
      }
      const auto rows = hap::compare_objectives(entries, pb.problem, *baseline);
      std::vector<std::vector<std::string>> csv_rows{
          {"method", "objective", "improvement_vs_" + *baseline + "_pct"}};
      std::printf("%-12s %-24s %s\n", "method", "objective", "improvement %");
      for (const auto& row : rows) {
        const std::string imp = row.improvement_pct ? fmt(*row.improvement_pct) : "none";
        std::printf("%-12s %-24.17g %s\n", row.method.c_str(), row.objective_value,
                    imp.c_str());
        csv_rows.push_back({row.method, fmt(row.objective_value), imp});
      }
      if (!csv->empty()) write_csv(*csv, csv_rows);
      exit_code = kOk;
    });
  }
}

}  // namespace hapcli
