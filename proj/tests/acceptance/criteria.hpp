#pragma once

#include <functional>
#include <string>
#include <vector>

namespace acceptance {

struct Result {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Result()> run;
};

Result oracle_optimality();          // 1
Result flat_reduction();             // 2
Result hap_vs_greedy_2d();           // 3
Result sequence_recovery();          // 4
Result baseline_ordering();          // 5
Result complexity_scaling();         // 6
Result validity_invariants();        // 7
Result top_preference_coupling();    // 8

std::vector<Criterion> all_criteria();

}  // namespace acceptance
