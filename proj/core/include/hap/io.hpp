#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hap/baselines.hpp"
#include "hap/datagen.hpp"
#include "hap/problem.hpp"
#include "hap/solution.hpp"
#include "hap/solver.hpp"

namespace hap::io {

// JSON file formats. Finite values round-trip bitwise; -inf similarities are
// written as the string "-inf". Metadata travels as an opaque JSON object,
// passed in and out as serialized text so the public headers stay clean of
// the json library.

struct ProblemBundle {
  LayeredProblem problem;
  std::string metadata_json = "{}";
};

void write_problem(const std::string& path, const LayeredProblem& problem,
                   const std::string& metadata_json = "{}");
ProblemBundle read_problem(const std::string& path);

struct SolutionMeta {
  std::string method;
  double objective_value = 0.0;
  bool converged = true;
  int iterations = 0;
  int layers_fixed = 0;
  std::string config_json = "{}";
};

void write_solution(const std::string& path, const HierarchySolution& sol,
                    const SolutionMeta& meta);

struct SolutionBundle {
  HierarchySolution solution;
  SolutionMeta meta;
};

SolutionBundle read_solution(const std::string& path);

void write_tree(const std::string& path, const GenerationTree& tree,
                const std::string& metadata_json = "{}");
GenerationTree read_tree(const std::string& path);

void write_coords(const std::string& path, const PointCloud& cloud);

// Reads a coords file, or featurizes a tree file if one is given instead.
PointCloud read_coords_or_tree(const std::string& path);

std::string config_to_json(const SolverConfig& config);
SolverConfig config_from_json(const std::string& json_text);

/// RFC-4180 CSV writer: fields containing commas, quotes or newlines are
/// quoted, embedded quotes doubled.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);
  static std::string escape(const std::string& field);

 private:
  std::ostream& out_;
};

// Writes to <path>.tmp then renames, so readers never observe partial files.
void atomic_write_text(const std::string& path, const std::string& text);

}  // namespace hap::io
