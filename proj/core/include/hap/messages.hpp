#pragma once

#include <cstdint>
#include <vector>

#include "hap/problem.hpp"

namespace hap {

enum class Schedule {
  kPlain,      // sweep until the decode stabilizes or iterations run out
  kFixBottom,  // every fix_period sweeps, clamp the lowest unfixed layer
};

struct SolverConfig {
  double damping = 0.5;        // new = damping * old + (1 - damping) * fresh
  int max_iterations = 2000;
  int convergence_window = 50; // sweeps of unchanged decoded exemplar sets
  Schedule schedule = Schedule::kPlain;
  int fix_period = 500;        // sweeps between layer fixes under kFixBottom
  std::uint64_t rng_seed = 0;
  bool tie_jitter = false;     // seeded 1e-12 relative similarity jitter
  bool damp_interlayer = true; // damp tau/phi too; their column sums amplify
                               // per-entry swings by O(n), so leaving them
                               // undamped destabilizes deep hierarchies
};

// Decoded choices of a layer clamped by the fixing schedule.
struct FixedLayer {
  std::vector<int> active;
  std::vector<int> exemplars;
  std::vector<int> assignment;  // size n, -1 for inactive points
};

/// All message arrays of the solver.
///
/// rho[l] / alpha[l] are n-by-n responsibility / availability matrices for
/// layer l. tau[l] carries per-point evidence up into layer l from the layer
/// below (defined for l >= 1); phi[l] carries evidence down into layer l from
/// the layer above (defined for l <= L-2). Unused slots stay zero. Everything
/// starts at zero.
struct MessageState {
  int num_points = 0;
  int num_layers = 0;
  std::vector<std::vector<double>> rho;
  std::vector<std::vector<double>> alpha;
  std::vector<std::vector<double>> tau;
  std::vector<std::vector<double>> phi;
  long iteration = 0;
  int frozen_below = 0;            // layers [0, frozen_below) are fixed
  std::vector<FixedLayer> fixed;   // one record per frozen layer

  MessageState() = default;
  explicit MessageState(const LayeredProblem& problem);
};

/// One full damped message sweep: an upward pass updating responsibilities
/// and the evidence passed up, then a downward pass updating availabilities
/// and the evidence passed down. Costs O(num_layers * n^2). Throws
/// NumericalError if any message turns NaN or +inf, StructuralError on
/// dimension mismatch.
void iterate(MessageState& state, const LayeredProblem& problem,
             const SolverConfig& config);

}  // namespace hap
