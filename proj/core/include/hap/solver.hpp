#pragma once

#include "hap/messages.hpp"
#include "hap/solution.hpp"

namespace hap {

/// Reads a hierarchy out of the message state, bottom-up. The candidate set
/// of layer 0 is every point; above, it is the decoded exemplar set of the
/// layer below. A candidate that prefers itself (argmax over candidates of
/// alpha + s lands on its own index) becomes an exemplar; every other
/// candidate is assigned to the best decoded exemplar reachable through a
/// finite similarity, and is promoted to exemplar itself if there is none.
/// The result always satisfies the hierarchy constraints and has a finite
/// objective. Frozen layers are read from the state's fixed records.
HierarchySolution decode(const MessageState& state, const LayeredProblem& problem);

struct SolveTrace {
  std::vector<double> objectives;  // decoded objective after each sweep
  bool converged = false;
  int iterations = 0;
  int layers_fixed = 0;
};

struct SolveResult {
  HierarchySolution solution;
  SolveTrace trace;
  MessageState state;
};

/// Runs sweeps until the decoded exemplar sets are unchanged for
/// config.convergence_window consecutive sweeps or max_iterations is hit.
/// Under Schedule::kFixBottom the lowest unfixed layer is clamped every
/// fix_period sweeps; once every layer is fixed the run stops and counts as
/// converged. max_iterations = 0 just decodes the initial state.
SolveResult solve(const LayeredProblem& problem, const SolverConfig& config);
SolveResult solve(const LayeredProblem& problem, const SolverConfig& config,
                  MessageState initial);

}  // namespace hap
