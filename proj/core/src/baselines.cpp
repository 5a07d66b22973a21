#include "hap/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hap/rng.hpp"

namespace hap {

namespace {

void check_k(const KPerLayer& k, int num_layers, int num_points) {
  if (static_cast<int>(k.size()) != num_layers) {
    throw StructuralError("k must provide one cluster count per layer");
  }
  int avail = num_points;
  for (int l = 0; l < num_layers; ++l) {
    if (k[l] < 1 || k[l] > avail) throw StructuralError("infeasible cluster count k");
    avail = k[l];
  }
}

}  // namespace

HierarchySolution greedy_hap(const LayeredProblem& p, const SolverConfig& cfg,
                             GreedyInfo* info) {
  const ValidationReport rep = validate_problem(p);
  if (!rep.valid()) throw StructuralError("invalid problem: " + rep.violations.front());
  const int n = p.num_points();
  const int L = p.num_layers();

  HierarchySolution out;
  out.num_points = n;
  out.layers.resize(L);
  GreedyInfo acc;

  std::vector<int> cand(n);
  std::iota(cand.begin(), cand.end(), 0);
  for (int l = 0; l < L; ++l) {
    const int m = static_cast<int>(cand.size());
    LayeredProblem sub(m, 1);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) sub.set_s(0, a, b, p.s(l, cand[a], cand[b]));
      sub.set_c(0, a, p.c(l, cand[a]));
    }
    SolveResult r = solve(sub, cfg);
    acc.converged = acc.converged && r.trace.converged;
    acc.iterations += r.trace.iterations;

    LayerAssignment& la = out.layers[l];
    la.active = cand;
    la.assignment.assign(n, -1);
    const LayerAssignment& sla = r.solution.layers[0];
    for (int a = 0; a < m; ++a) la.assignment[cand[a]] = cand[sla.assignment[a]];
    la.exemplars.clear();
    for (int e : sla.exemplars) la.exemplars.push_back(cand[e]);
    cand = la.exemplars;
  }
  if (info) *info = acc;
  return out;
}

namespace {

// one k-medians restart on the dissimilarities d(i,j) = -s(l,i,j), indices
// local to `cand`; returns total cost and fills medoids/assign
double kmedians_restart(const LayeredProblem& p, int l, const std::vector<int>& cand,
                        int k, Rng rng, std::vector<int>& medoids,
                        std::vector<int>& assign) {
  const int m = static_cast<int>(cand.size());
  auto dis = [&](int a, int b) {
    const double s = p.s(l, cand[a], cand[b]);
    return (s == kNegInf) ? std::numeric_limits<double>::infinity() : -s;
  };

  medoids = rng.sample_distinct(m, k);
  std::sort(medoids.begin(), medoids.end());
  assign.assign(m, -1);
  std::vector<char> is_med(m, 0);

  for (int round = 0; round < 1000; ++round) {
    std::fill(is_med.begin(), is_med.end(), 0);
    for (int mid : medoids) is_med[mid] = 1;
    // nearest medoid, medoids pinned to themselves
    for (int i = 0; i < m; ++i) {
      if (is_med[i]) {
        assign[i] = i;
        continue;
      }
      int best = medoids.front();
      double best_d = dis(i, best);
      for (int mid : medoids) {
        const double d = dis(i, mid);
        if (d < best_d) {
          best_d = d;
          best = mid;
        }
      }
      assign[i] = best;
    }
    // re-select each cluster's medoid
    std::vector<int> next;
    next.reserve(k);
    for (int mid : medoids) {
      std::vector<int> members;
      for (int i = 0; i < m; ++i) {
        if (assign[i] == mid) members.push_back(i);
      }
      int best = mid;
      double best_total = std::numeric_limits<double>::infinity();
      for (int c : members) {
        double total = 0.0;
        for (int i : members) total += dis(i, c);
        if (total < best_total) {
          best_total = total;
          best = c;
        }
      }
      next.push_back(best);
    }
    std::sort(next.begin(), next.end());
    if (next == medoids) break;
    medoids = std::move(next);
  }

  double cost = 0.0;
  for (int i = 0; i < m; ++i) cost += dis(i, assign[i]);
  return cost;
}

}  // namespace

HierarchySolution hk_medians(const LayeredProblem& p, const KPerLayer& k,
                             int restarts, std::uint64_t seed) {
  const int n = p.num_points();
  const int L = p.num_layers();
  check_k(k, L, n);
  if (restarts < 1) throw StructuralError("restarts must be >= 1");

  HierarchySolution out;
  out.num_points = n;
  out.layers.resize(L);
  Rng root(seed);

  std::vector<int> cand(n);
  std::iota(cand.begin(), cand.end(), 0);
  for (int l = 0; l < L; ++l) {
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_medoids, best_assign;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
      std::vector<int> medoids, assign;
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(l) << 32) | static_cast<std::uint64_t>(r);
      const double cost = kmedians_restart(p, l, cand, k[l], root.child(stream),
                                           medoids, assign);
      if (!have_best || cost < best_cost) {
        best_cost = cost;
        best_medoids = std::move(medoids);
        best_assign = std::move(assign);
        have_best = true;
      }
    }
    LayerAssignment& la = out.layers[l];
    la.active = cand;
    la.assignment.assign(n, -1);
    const int m = static_cast<int>(cand.size());
    for (int i = 0; i < m; ++i) la.assignment[cand[i]] = cand[best_assign[i]];
    la.exemplars.clear();
    for (int mid : best_medoids) la.exemplars.push_back(cand[mid]);
    std::sort(la.exemplars.begin(), la.exemplars.end());
    cand = la.exemplars;
  }
  return out;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double diff = a[t] - b[t];
    d += diff * diff;
  }
  return d;
}

// one Lloyd restart over cloud points indexed by cand; returns within-cluster
// cost and fills per-point cluster ids
double kmeans_restart(const PointCloud& cloud, const std::vector<int>& cand, int k,
                      Rng rng, std::vector<std::vector<double>>& centers,
                      std::vector<int>& cluster) {
  const int m = static_cast<int>(cand.size());
  centers.clear();
  for (int t : rng.sample_distinct(m, k)) centers.push_back(cloud.coords[cand[t]]);
  cluster.assign(m, -1);

  for (int round = 0; round < 500; ++round) {
    bool changed = false;
    for (int i = 0; i < m; ++i) {
      int best = 0;
      double best_d = sq_dist(cloud.coords[cand[i]], centers[0]);
      for (int c = 1; c < k; ++c) {
        const double d = sq_dist(cloud.coords[cand[i]], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (cluster[i] != best) {
        cluster[i] = best;
        changed = true;
      }
    }
    if (!changed) break;

    std::vector<int> counts(k, 0);
    std::vector<std::vector<double>> sums(k, std::vector<double>(cloud.dim, 0.0));
    for (int i = 0; i < m; ++i) {
      ++counts[cluster[i]];
      const std::vector<double>& x = cloud.coords[cand[i]];
      for (int t = 0; t < cloud.dim; ++t) sums[cluster[i]][t] += x[t];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (int t = 0; t < cloud.dim; ++t) centers[c][t] = sums[c][t] / counts[c];
    }
    // an empty cluster re-seeds from the point farthest from its center
    for (int c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      int far = 0;
      double far_d = -1.0;
      for (int i = 0; i < m; ++i) {
        const double d = sq_dist(cloud.coords[cand[i]], centers[cluster[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      centers[c] = cloud.coords[cand[far]];
      cluster[far] = c;
    }
  }

  double cost = 0.0;
  for (int i = 0; i < m; ++i) cost += sq_dist(cloud.coords[cand[i]], centers[cluster[i]]);
  return cost;
}

}  // namespace

HierarchySolution hk_means(const PointCloud& cloud, const KPerLayer& k,
                           int restarts, std::uint64_t seed) {
  const int n = cloud.size();
  const int L = static_cast<int>(k.size());
  if (n < 1 || cloud.dim < 1) throw StructuralError("empty point cloud");
  for (const auto& x : cloud.coords) {
    if (static_cast<int>(x.size()) != cloud.dim) {
      throw StructuralError("point cloud has mixed dimensions");
    }
  }
  check_k(k, L, n);
  if (restarts < 1) throw StructuralError("restarts must be >= 1");

  HierarchySolution out;
  out.num_points = n;
  out.layers.resize(L);
  Rng root(seed);

  std::vector<int> cand(n);
  std::iota(cand.begin(), cand.end(), 0);
  for (int l = 0; l < L; ++l) {
    const int m = static_cast<int>(cand.size());
    // snapping can merge exemplars, leaving fewer points than the declared k
    const int kl = std::min(k[l], m);
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best_centers;
    std::vector<int> best_cluster;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
      std::vector<std::vector<double>> centers;
      std::vector<int> cluster;
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(l) << 32) | static_cast<std::uint64_t>(r);
      const double cost = kmeans_restart(cloud, cand, kl, root.child(stream),
                                         centers, cluster);
      if (!have_best || cost < best_cost) {
        best_cost = cost;
        best_centers = std::move(centers);
        best_cluster = std::move(cluster);
        have_best = true;
      }
    }

    // snap each cluster mean to the nearest point of this layer
    std::vector<int> snapped(kl, -1);
    for (int c = 0; c < kl; ++c) {
      int best = 0;
      double best_d = sq_dist(best_centers[c], cloud.coords[cand[0]]);
      for (int i = 1; i < m; ++i) {
        const double d = sq_dist(best_centers[c], cloud.coords[cand[i]]);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      snapped[c] = cand[best];
    }

    LayerAssignment& la = out.layers[l];
    la.active = cand;
    la.assignment.assign(n, -1);
    la.exemplars = snapped;
    std::sort(la.exemplars.begin(), la.exemplars.end());
    la.exemplars.erase(std::unique(la.exemplars.begin(), la.exemplars.end()),
                       la.exemplars.end());
    std::vector<char> is_ex(n, 0);
    for (int e : la.exemplars) is_ex[e] = 1;
    for (int i = 0; i < m; ++i) {
      const int id = cand[i];
      la.assignment[id] = is_ex[id] ? id : snapped[best_cluster[i]];
    }
    cand = la.exemplars;
  }
  return out;
}

}  // namespace hap
