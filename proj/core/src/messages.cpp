#include "hap/messages.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hap {

MessageState::MessageState(const LayeredProblem& p)
    : num_points(p.num_points()), num_layers(p.num_layers()) {
  const std::size_t nn = static_cast<std::size_t>(num_points) * num_points;
  rho.assign(num_layers, std::vector<double>(nn, 0.0));
  alpha.assign(num_layers, std::vector<double>(nn, 0.0));
  tau.assign(num_layers, std::vector<double>(num_points, 0.0));
  phi.assign(num_layers, std::vector<double>(num_points, 0.0));
}

namespace {

// Damped update with -inf passthrough, clamped to [-kBig, kBig] so that a
// chain of sweeps on inputs with forbidden entries can never reach +inf.
inline double damp_entry(double lam, double old_v, double fresh) {
  double v;
  if (fresh == kNegInf || old_v == kNegInf) {
    v = (lam == 0.0) ? fresh : kNegInf;
  } else {
    v = lam * old_v + (1.0 - lam) * fresh;
  }
  if (v > kBig) return kBig;
  if (v < -kBig && v != kNegInf) return -kBig;
  return v;
}

// column sums of positive responsibilities, diagonal excluded
void positive_column_sums(const std::vector<double>& rho_l, int n,
                          std::vector<double>& colsum) {
  std::fill(colsum.begin(), colsum.end(), 0.0);
  for (int k = 0; k < n; ++k) {
    const double* row = rho_l.data() + static_cast<std::size_t>(k) * n;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const double r = row[j];
      if (r > 0.0) colsum[j] += r;
    }
  }
}

// rho rows of a fixed layer become hard evidence: 0 for the recorded choice,
// -inf everywhere else (inactive points get all--inf rows)
void apply_fixed_rho(MessageState& st, int l) {
  const int n = st.num_points;
  const FixedLayer& f = st.fixed[l];
  std::vector<double>& rho_l = st.rho[l];
  std::fill(rho_l.begin(), rho_l.end(), kNegInf);
  for (int i : f.active) {
    rho_l[static_cast<std::size_t>(i) * n + f.assignment[i]] = 0.0;
  }
}

void check_family(const std::vector<std::vector<double>>& arr, const char* family,
                  long iteration) {
  for (std::size_t l = 0; l < arr.size(); ++l) {
    for (double v : arr[l]) {
      if (std::isnan(v) || (std::isinf(v) && v > 0.0)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s message in %s at layer %zu (sweep %ld)",
                      std::isnan(v) ? "NaN" : "+inf", family, l, iteration);
        throw NumericalError(buf);
      }
    }
  }
}

}  // namespace

void iterate(MessageState& st, const LayeredProblem& p, const SolverConfig& cfg) {
  const int n = p.num_points();
  const int L = p.num_layers();
  if (st.num_points != n || st.num_layers != L) {
    throw StructuralError("message state does not match the problem dimensions");
  }
  if (!(cfg.damping >= 0.0 && cfg.damping < 1.0)) {
    throw StructuralError("damping must lie in [0, 1)");
  }
  const double lam = cfg.damping;
  std::vector<double> colsum(n), base(n), self_fresh(n);

  const bool stale = std::getenv("HAP_STALE_INTERLAYER") != nullptr;  // experiment
  if (stale) {
    const double cross_lam = cfg.damp_interlayer ? lam : 0.0;
    for (int l = 0; l + 1 < L; ++l) {
      positive_column_sums(st.rho[l], n, colsum);
      const std::vector<double>& rho_l = st.rho[l];
      for (int j = 0; j < n; ++j) {
        const double rjj = rho_l[static_cast<std::size_t>(j) * n + j];
        const double fresh = (rjj == kNegInf) ? kNegInf : p.c(l, j) + rjj + colsum[j];
        st.tau[l + 1][j] = damp_entry(cross_lam, st.tau[l + 1][j], fresh);
      }
    }
    for (int l = 1; l < L; ++l) {
      for (int j = 0; j < n; ++j) {
        const double* arow = st.alpha[l].data() + static_cast<std::size_t>(j) * n;
        const double* srow = p.sim_row(l, j);
        double best = kNegInf;
        for (int k = 0; k < n; ++k) {
          const double v = arow[k] + srow[k];
          if (v > best) best = v;
        }
        st.phi[l - 1][j] = damp_entry(cross_lam, st.phi[l - 1][j], best);
      }
    }
  }

  // Upward pass: responsibilities per layer, then the per-point evidence
  // passed up into the next layer. rho at layer 0 is the standard flat
  // update; above, the evidence from below caps how strongly a point can
  // claim an exemplar:
  //   rho(l,i,j) = s(i,j) + min[ tau(l,i), -max_{k != j} (alpha(l,i,k) + s(i,k)) ]
  for (int l = 0; l < L; ++l) {
    if (l < st.frozen_below) {
      apply_fixed_rho(st, l);
    } else {
      const std::vector<double>& alpha_l = st.alpha[l];
      std::vector<double>& rho_l = st.rho[l];
      for (int i = 0; i < n; ++i) {
        const double* arow = alpha_l.data() + static_cast<std::size_t>(i) * n;
        const double* srow = p.sim_row(l, i);
        double max1 = kNegInf, max2 = kNegInf;
        int arg1 = -1;
        for (int k = 0; k < n; ++k) {
          const double v = arow[k] + srow[k];
          if (v > max1) {
            max2 = max1;
            max1 = v;
            arg1 = k;
          } else if (v > max2) {
            max2 = v;
          }
        }
        double* rrow = rho_l.data() + static_cast<std::size_t>(i) * n;
        if (l == 0) {
          for (int j = 0; j < n; ++j) {
            const double alt = (j == arg1) ? max2 : max1;
            double fresh;
            if (srow[j] == kNegInf) {
              fresh = kNegInf;
            } else if (alt == kNegInf) {
              fresh = kBig;  // no admissible alternative: j is forced
            } else {
              fresh = srow[j] - alt;
            }
            rrow[j] = damp_entry(lam, rrow[j], fresh);
          }
        } else {
          const double up = st.tau[l][i];
          for (int j = 0; j < n; ++j) {
            const double alt = (j == arg1) ? max2 : max1;
            const double cap = (alt == kNegInf) ? up : std::min(up, -alt);
            const double fresh =
                (srow[j] == kNegInf || cap == kNegInf) ? kNegInf : srow[j] + cap;
            rrow[j] = damp_entry(lam, rrow[j], fresh);
          }
        }
      }
    }
    if (!stale && l + 1 < L) {
      // tau(l+1, j) = c(l,j) + rho(l,j,j) + sum_{k != j} max(0, rho(l,k,j))
      positive_column_sums(st.rho[l], n, colsum);
      const std::vector<double>& rho_l = st.rho[l];
      const double tau_lam = cfg.damp_interlayer ? lam : 0.0;
      for (int j = 0; j < n; ++j) {
        const double rjj = rho_l[static_cast<std::size_t>(j) * n + j];
        const double fresh = (rjj == kNegInf) ? kNegInf : p.c(l, j) + rjj + colsum[j];
        st.tau[l + 1][j] = damp_entry(tau_lam, st.tau[l + 1][j], fresh);
      }
    }
  }

  // Downward pass: availabilities per layer from the top, then the per-point
  // evidence passed down. Below the top layer the preference is augmented by
  // the evidence from above: chat(l,j) = c(l,j) + phi(l,j).
  //   alpha(l,j,j)          = chat(l,j) + sum_{k != j} max(0, rho(l,k,j))
  //   alpha(l,i,j), i != j  = min[0, chat(l,j) + rho(l,j,j)
  //                                  + sum_{k != i,j} max(0, rho(l,k,j))]
  for (int l = L - 1; l >= 0; --l) {
    const std::vector<double>& rho_l = st.rho[l];
    std::vector<double>& alpha_l = st.alpha[l];
    positive_column_sums(rho_l, n, colsum);
    for (int j = 0; j < n; ++j) {
      const double pref = (l + 1 < L) ? p.c(l, j) + st.phi[l][j] : p.c(l, j);
      const double rjj = rho_l[static_cast<std::size_t>(j) * n + j];
      self_fresh[j] = pref + colsum[j];
      base[j] = (rjj == kNegInf) ? kNegInf : pref + rjj + colsum[j];
    }
    for (int i = 0; i < n; ++i) {
      double* arow = alpha_l.data() + static_cast<std::size_t>(i) * n;
      const double* rrow = rho_l.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) {
        double fresh;
        if (i == j) {
          fresh = self_fresh[j];
        } else if (base[j] == kNegInf) {
          fresh = kNegInf;
        } else {
          const double rij = rrow[j];
          const double excl = (rij > 0.0) ? base[j] - rij : base[j];
          fresh = (excl < 0.0) ? excl : 0.0;
        }
        arow[j] = damp_entry(lam, arow[j], fresh);
      }
    }
    if (!stale && l > 0) {
      // phi(l-1, j) = max_k (alpha(l,j,k) + s(l,j,k))
      const double phi_lam = cfg.damp_interlayer ? lam : 0.0;
      for (int j = 0; j < n; ++j) {
        const double* arow = alpha_l.data() + static_cast<std::size_t>(j) * n;
        const double* srow = p.sim_row(l, j);
        double best = kNegInf;
        for (int k = 0; k < n; ++k) {
          const double v = arow[k] + srow[k];
          if (v > best) best = v;
        }
        st.phi[l - 1][j] = damp_entry(phi_lam, st.phi[l - 1][j], best);
      }
    }
  }

  ++st.iteration;
  check_family(st.rho, "rho", st.iteration);
  check_family(st.alpha, "alpha", st.iteration);
  check_family(st.tau, "tau", st.iteration);
  check_family(st.phi, "phi", st.iteration);
}

}  // namespace hap
