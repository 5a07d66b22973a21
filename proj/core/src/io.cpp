#include "hap/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace hap::io {

using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

json parse_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string(what) + ": " + e.what());
  }
}

json encode_value(double v) {
  if (v == kNegInf) return json("-inf");
  if (!std::isfinite(v)) throw IoError("cannot serialize NaN or +inf");
  return json(v);
}

double decode_value(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "-inf") return kNegInf;
  throw IoError(path + ": expected a number or \"-inf\"");
}

int require_int(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw IoError(path + ": missing integer field \"" + key + "\"");
  }
  return j[key].get<int>();
}

}  // namespace

void atomic_write_text(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << text;
    if (!out.good()) throw IoError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

void write_problem(const std::string& path, const LayeredProblem& p,
                   const std::string& metadata_json) {
  const int n = p.num_points();
  const int L = p.num_layers();
  json j;
  j["format"] = "hap-problem-v1";
  j["n"] = n;
  j["layers"] = L;
  json sims = json::array();
  json prefs = json::array();
  for (int l = 0; l < L; ++l) {
    json mat = json::array();
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) mat.push_back(encode_value(p.s(l, i, k)));
    }
    sims.push_back(std::move(mat));
    json pv = json::array();
    for (int k = 0; k < n; ++k) pv.push_back(encode_value(p.c(l, k)));
    prefs.push_back(std::move(pv));
  }
  j["similarities"] = std::move(sims);
  j["preferences"] = std::move(prefs);
  j["metadata"] = parse_text(metadata_json, "metadata");
  atomic_write_text(path, j.dump(2) + "\n");
}

ProblemBundle read_problem(const std::string& path) {
  const json j = parse_file(path);
  const int n = require_int(j, "n", path);
  const int L = require_int(j, "layers", path);
  if (n < 1 || L < 1) throw IoError(path + ": n and layers must be positive");
  if (!j.contains("similarities") || !j["similarities"].is_array() ||
      static_cast<int>(j["similarities"].size()) != L) {
    throw IoError(path + ": similarities must hold one entry per layer");
  }
  if (!j.contains("preferences") || !j["preferences"].is_array() ||
      static_cast<int>(j["preferences"].size()) != L) {
    throw IoError(path + ": preferences must hold one entry per layer");
  }
  const bool sparse = j.value("sparse", false);

  LayeredProblem p(n, L);
  for (int l = 0; l < L; ++l) {
    const json& mat = j["similarities"][l];
    if (sparse) {
      std::vector<double> dense(static_cast<std::size_t>(n) * n, kNegInf);
      for (int d = 0; d < n; ++d) dense[static_cast<std::size_t>(d) * n + d] = 0.0;
      if (!mat.is_array()) throw IoError(path + ": sparse layer must be an array");
      for (const json& e : mat) {
        if (!e.is_object()) throw IoError(path + ": sparse entry must be an object");
        const int i = require_int(e, "i", path);
        const int k = require_int(e, "j", path);
        if (i < 0 || i >= n || k < 0 || k >= n) {
          throw IoError(path + ": sparse entry index out of range");
        }
        if (!e.contains("value")) throw IoError(path + ": sparse entry lacks value");
        dense[static_cast<std::size_t>(i) * n + k] = decode_value(e["value"], path);
      }
      p.set_layer_sim(l, std::move(dense));
    } else {
      if (!mat.is_array() || mat.size() != static_cast<std::size_t>(n) * n) {
        throw IoError(path + ": dense layer must hold n*n values");
      }
      std::vector<double> dense;
      dense.reserve(mat.size());
      for (const json& e : mat) dense.push_back(decode_value(e, path));
      p.set_layer_sim(l, std::move(dense));
    }
    const json& pv = j["preferences"][l];
    if (!pv.is_array() || static_cast<int>(pv.size()) != n) {
      throw IoError(path + ": preference vector must hold n values");
    }
    std::vector<double> prefs;
    prefs.reserve(n);
    for (const json& e : pv) prefs.push_back(decode_value(e, path));
    p.set_layer_pref(l, std::move(prefs));
  }

  const ValidationReport rep = validate_problem(p);
  if (!rep.valid()) {
    throw IoError(path + ": invalid problem: " + rep.violations.front());
  }
  ProblemBundle bundle;
  bundle.problem = std::move(p);
  bundle.metadata_json = j.contains("metadata") ? j["metadata"].dump() : "{}";
  return bundle;
}

namespace {

json solution_to_json(const HierarchySolution& sol, const SolutionMeta& meta) {
  json j;
  j["format"] = "hap-solution-v1";
  j["method"] = meta.method;
  j["n"] = sol.num_points;
  j["layers"] = sol.num_layers();
  json active = json::array(), exemplars = json::array(), assignment = json::array();
  for (const auto& la : sol.layers) {
    active.push_back(la.active);
    exemplars.push_back(la.exemplars);
    json pairs = json::array();
    for (int i : la.active) pairs.push_back(json::array({i, la.assignment[i]}));
    assignment.push_back(std::move(pairs));
  }
  j["active"] = std::move(active);
  j["exemplars"] = std::move(exemplars);
  j["assignment"] = std::move(assignment);
  j["objective"] = encode_value(meta.objective_value);
  j["converged"] = meta.converged;
  j["iterations"] = meta.iterations;
  j["config"] = parse_text(meta.config_json, "config");
  j["trace"] = {{"iterations", meta.iterations},
                {"converged", meta.converged},
                {"layers_fixed", meta.layers_fixed},
                {"final_objective", encode_value(meta.objective_value)}};
  return j;
}

}  // namespace

void write_solution(const std::string& path, const HierarchySolution& sol,
                    const SolutionMeta& meta) {
  atomic_write_text(path, solution_to_json(sol, meta).dump(2) + "\n");
}

SolutionBundle read_solution(const std::string& path) {
  const json j = parse_file(path);
  SolutionBundle bundle;
  const int n = require_int(j, "n", path);
  const int L = require_int(j, "layers", path);
  if (n < 1 || L < 1) throw IoError(path + ": n and layers must be positive");
  HierarchySolution& sol = bundle.solution;
  sol.num_points = n;
  sol.layers.resize(L);
  for (int l = 0; l < L; ++l) {
    LayerAssignment& la = sol.layers[l];
    la.active = j.at("active").at(l).get<std::vector<int>>();
    la.exemplars = j.at("exemplars").at(l).get<std::vector<int>>();
    la.assignment.assign(n, -1);
    for (const json& pair : j.at("assignment").at(l)) {
      const int i = pair.at(0).get<int>();
      const int a = pair.at(1).get<int>();
      if (i < 0 || i >= n || a < 0 || a >= n) {
        throw IoError(path + ": assignment index out of range");
      }
      la.assignment[i] = a;
    }
  }
  bundle.meta.method = j.value("method", "unknown");
  bundle.meta.objective_value = decode_value(j.at("objective"), path);
  bundle.meta.converged = j.value("converged", true);
  bundle.meta.iterations = j.value("iterations", 0);
  bundle.meta.config_json = j.contains("config") ? j["config"].dump() : "{}";
  if (j.contains("trace") && j["trace"].contains("layers_fixed")) {
    bundle.meta.layers_fixed = j["trace"]["layers_fixed"].get<int>();
  }
  return bundle;
}

void write_tree(const std::string& path, const GenerationTree& tree,
                const std::string& metadata_json) {
  json j;
  j["format"] = "hap-tree-v1";
  j["kind"] = tree.kind == PayloadKind::kPoint2D ? "2d" : "seq";
  j["layers"] = tree.num_layers;
  json nodes = json::array();
  for (const auto& nd : tree.nodes) {
    json e;
    e["id"] = nd.id;
    e["layer"] = nd.layer_of_origin;
    e["parent"] = nd.parent;
    if (tree.kind == PayloadKind::kPoint2D) {
      e["point"] = json::array({nd.point[0], nd.point[1]});
    } else {
      e["seq"] = nd.seq;
      if (nd.mutations >= 0) e["mutations"] = nd.mutations;
    }
    nodes.push_back(std::move(e));
  }
  j["nodes"] = std::move(nodes);
  j["metadata"] = parse_text(metadata_json, "metadata");
  atomic_write_text(path, j.dump(2) + "\n");
}

GenerationTree read_tree(const std::string& path) {
  const json j = parse_file(path);
  GenerationTree tree;
  const std::string kind = j.value("kind", "");
  if (kind == "2d") {
    tree.kind = PayloadKind::kPoint2D;
  } else if (kind == "seq") {
    tree.kind = PayloadKind::kSequence;
  } else {
    throw IoError(path + ": unknown tree kind");
  }
  tree.num_layers = require_int(j, "layers", path);
  if (!j.contains("nodes") || !j["nodes"].is_array()) {
    throw IoError(path + ": missing nodes array");
  }
  for (const json& e : j["nodes"]) {
    TreeNode nd;
    nd.id = require_int(e, "id", path);
    nd.layer_of_origin = require_int(e, "layer", path);
    nd.parent = require_int(e, "parent", path);
    if (tree.kind == PayloadKind::kPoint2D) {
      nd.point[0] = e.at("point").at(0).get<double>();
      nd.point[1] = e.at("point").at(1).get<double>();
    } else {
      nd.seq = e.at("seq").get<std::string>();
      nd.mutations = e.value("mutations", -1);
    }
    tree.nodes.push_back(std::move(nd));
  }
  if (tree.nodes.empty()) throw IoError(path + ": tree has no nodes");
  return tree;
}

void write_coords(const std::string& path, const PointCloud& cloud) {
  json j;
  j["format"] = "hap-coords-v1";
  j["dim"] = cloud.dim;
  j["coords"] = cloud.coords;
  atomic_write_text(path, j.dump() + "\n");
}

PointCloud read_coords_or_tree(const std::string& path) {
  const json j = parse_file(path);
  if (j.contains("nodes")) {
    return featurize(read_tree(path));
  }
  PointCloud cloud;
  cloud.dim = require_int(j, "dim", path);
  if (!j.contains("coords") || !j["coords"].is_array()) {
    throw IoError(path + ": missing coords array");
  }
  for (const json& e : j["coords"]) {
    cloud.coords.push_back(e.get<std::vector<double>>());
    if (static_cast<int>(cloud.coords.back().size()) != cloud.dim) {
      throw IoError(path + ": coordinate dimension mismatch");
    }
  }
  if (cloud.coords.empty()) throw IoError(path + ": empty point cloud");
  return cloud;
}

std::string config_to_json(const SolverConfig& cfg) {
  json j;
  j["damping"] = cfg.damping;
  j["max_iterations"] = cfg.max_iterations;
  j["convergence_window"] = cfg.convergence_window;
  j["schedule"] = cfg.schedule == Schedule::kFixBottom ? "fix-bottom" : "plain";
  j["fix_period"] = cfg.fix_period;
  j["rng_seed"] = cfg.rng_seed;
  j["tie_jitter"] = cfg.tie_jitter;
  return j.dump();
}

SolverConfig config_from_json(const std::string& text) {
  const json j = parse_text(text, "config");
  SolverConfig cfg;
  cfg.damping = j.value("damping", cfg.damping);
  cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
  cfg.convergence_window = j.value("convergence_window", cfg.convergence_window);
  cfg.schedule = j.value("schedule", std::string("plain")) == "fix-bottom"
                     ? Schedule::kFixBottom
                     : Schedule::kPlain;
  cfg.fix_period = j.value("fix_period", cfg.fix_period);
  cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
  cfg.tie_jitter = j.value("tie_jitter", cfg.tie_jitter);
  return cfg;
}

std::string CsvWriter::escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t t = 0; t < fields.size(); ++t) {
    if (t) out_ << ',';
    out_ << escape(fields[t]);
  }
  out_ << "\r\n";
}

}  // namespace hap::io
