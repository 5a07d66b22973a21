#pragma once

#include <cmath>

#include "hap/problem.hpp"
#include "hap/rng.hpp"

namespace testutil {

// Random instance: similarities uniform in [sim_lo, 0], preferences in
// [pref_lo, 0], optional forbidden entries off the diagonal. With
// dyadic = true every value is a multiple of 1/8, so sums of moderately many
// terms are exact in double arithmetic.
inline hap::LayeredProblem random_problem(int n, int L, hap::Rng& rng,
                                          double neg_inf_fraction = 0.0,
                                          bool dyadic = false,
                                          double sim_lo = -10.0,
                                          double pref_lo = -8.0) {
  hap::LayeredProblem p(n, L);
  auto draw = [&](double lo) {
    double v = rng.uniform(lo, 0.0);
    if (dyadic) v = std::round(v * 8.0) / 8.0;
    return v;
  };
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (neg_inf_fraction > 0.0 && rng.uniform01() < neg_inf_fraction) {
          p.set_s(l, i, j, hap::kNegInf);
        } else {
          p.set_s(l, i, j, draw(sim_lo));
        }
      }
      p.set_c(l, i, draw(pref_lo));
    }
  }
  return p;
}

}  // namespace testutil
