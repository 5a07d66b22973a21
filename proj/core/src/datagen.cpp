#include "hap/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hap {

namespace {

constexpr char kAlphabet[] = "ACGT";

}  // namespace

int GenerationTree::root_count() const {
  int c = 0;
  for (const auto& nd : nodes) {
    if (nd.parent == -1) ++c;
  }
  return c;
}

int hamming(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw StructuralError("hamming: unequal lengths");
  int d = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] != b[t]) ++d;
  }
  return d;
}

double trunc_geom_log_pmf(double p, int lo, int hi, int k) {
  if (k < lo || k > hi) return kNegInf;
  const double q = 1.0 - p;
  const double log_norm = std::log(1.0 - std::pow(q, static_cast<double>(hi - lo + 1)));
  return std::log(p) + static_cast<double>(k - lo) * std::log(q) - log_norm;
}

int sample_trunc_geom(Rng& rng, double p, int lo, int hi) {
  const double q = 1.0 - p;
  const double norm = 1.0 - std::pow(q, static_cast<double>(hi - lo + 1));
  const double u = rng.uniform01() * norm;
  double cdf = 0.0;
  double pmf = p;
  for (int k = lo; k < hi; ++k) {
    cdf += pmf;
    if (u < cdf) return k;
    pmf *= q;
  }
  return hi;
}

GenerationTree gen_2d(const Gen2DConfig& cfg) {
  if (cfg.num_layers < 1 || cfg.num_layers > 7) {
    throw StructuralError("gen_2d: num_layers must lie in 1..7");
  }
  if (cfg.total_points < cfg.num_layers) {
    throw StructuralError("gen_2d: total_points too small for the layer count");
  }
  if (cfg.branching < 1 || cfg.top_std <= 0.0 || cfg.std_divisor <= 0.0) {
    throw StructuralError("gen_2d: invalid shape parameters");
  }

  // geometric layer sizes, top count chosen so the total lands near target
  double weight = 0.0;
  for (int d = 0; d < cfg.num_layers; ++d) weight += std::pow(cfg.branching, d);
  int top = std::max(1, static_cast<int>(std::lround(cfg.total_points / weight)));

  GenerationTree tree;
  tree.kind = PayloadKind::kPoint2D;
  tree.num_layers = cfg.num_layers;
  Rng rng(cfg.rng_seed);

  int prev_begin = 0, prev_end = 0;
  int count = top;
  for (int depth = 0; depth < cfg.num_layers; ++depth) {
    const double sigma = cfg.top_std / std::pow(cfg.std_divisor, depth);
    const int begin = tree.size();
    for (int t = 0; t < count; ++t) {
      TreeNode nd;
      nd.id = tree.size();
      nd.layer_of_origin = cfg.num_layers - depth;
      if (depth == 0) {
        nd.parent = -1;
        nd.point[0] = rng.normal(0.0, sigma);
        nd.point[1] = rng.normal(0.0, sigma);
      } else {
        nd.parent = prev_begin + rng.uniform_int(0, prev_end - prev_begin - 1);
        const TreeNode& par = tree.nodes[nd.parent];
        nd.point[0] = rng.normal(par.point[0], sigma);
        nd.point[1] = rng.normal(par.point[1], sigma);
      }
      tree.nodes.push_back(nd);
    }
    prev_begin = begin;
    prev_end = tree.size();
    count *= cfg.branching;
  }
  return tree;
}

GenerationTree gen_sequences(const GenSeqConfig& cfg) {
  if (cfg.generations < 1) throw StructuralError("gen_sequences: generations must be >= 1");
  if (cfg.alphabet_size != 4) throw StructuralError("gen_sequences: alphabet is fixed to ACGT");
  if (cfg.seq_length < 1 || cfg.children_mean < 1.0 || cfg.mutations_mean <= 0.0 ||
      cfg.children_max < 1) {
    throw StructuralError("gen_sequences: invalid parameters");
  }

  GenerationTree tree;
  tree.kind = PayloadKind::kSequence;
  tree.num_layers = cfg.generations;
  Rng rng(cfg.rng_seed);

  TreeNode root;
  root.id = 0;
  root.layer_of_origin = cfg.generations;
  root.parent = -1;
  root.seq.resize(cfg.seq_length);
  for (int t = 0; t < cfg.seq_length; ++t) root.seq[t] = kAlphabet[rng.uniform_int(0, 3)];
  tree.nodes.push_back(std::move(root));

  // child counts: mean mu on support {1..children_max}  => p = 1/mu
  // mutation counts: mean mu on support {0..seq_length} => p = 1/(mu+1),
  // so identical parent/child pairs (zero mutations) are possible
  const double p_children = 1.0 / cfg.children_mean;
  const double p_mut = 1.0 / (cfg.mutations_mean + 1.0);

  int level_begin = 0, level_end = 1;
  for (int g = 1; g < cfg.generations; ++g) {
    for (int par = level_begin; par < level_end; ++par) {
      const int n_children = sample_trunc_geom(rng, p_children, 1, cfg.children_max);
      for (int c = 0; c < n_children; ++c) {
        TreeNode nd;
        nd.id = tree.size();
        nd.layer_of_origin = cfg.generations - g;
        nd.parent = par;
        nd.seq = tree.nodes[par].seq;
        const int m = sample_trunc_geom(rng, p_mut, 0, cfg.seq_length);
        nd.mutations = m;
        for (int pos : rng.sample_distinct(cfg.seq_length, m)) {
          int cur = 0;
          while (kAlphabet[cur] != nd.seq[pos]) ++cur;
          nd.seq[pos] = kAlphabet[(cur + 1 + rng.uniform_int(0, 2)) % 4];
        }
        tree.nodes.push_back(std::move(nd));
      }
    }
    level_begin = level_end;
    level_end = tree.size();
  }
  return tree;
}

namespace {

void check_preferences(const std::vector<std::vector<double>>& prefs, int L, int n) {
  if (static_cast<int>(prefs.size()) != L) {
    throw StructuralError("preferences must provide one vector per layer");
  }
  for (const auto& layer : prefs) {
    if (static_cast<int>(layer.size()) != n) {
      throw StructuralError("preference vector size mismatch");
    }
  }
}

}  // namespace

LayeredProblem problem_from_2d(const GenerationTree& tree, int num_layers,
                               const std::vector<std::vector<double>>& preferences,
                               bool squared) {
  if (tree.kind != PayloadKind::kPoint2D) {
    throw StructuralError("problem_from_2d: tree does not carry 2D payloads");
  }
  const int n = tree.size();
  check_preferences(preferences, num_layers, n);
  LayeredProblem p(n, num_layers);

  std::vector<double> sim(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = tree.nodes[i].point[0] - tree.nodes[j].point[0];
      const double dy = tree.nodes[i].point[1] - tree.nodes[j].point[1];
      const double d2 = dx * dx + dy * dy;
      sim[static_cast<std::size_t>(i) * n + j] = squared ? -d2 : -std::sqrt(d2);
    }
  }
  for (int l = 0; l < num_layers; ++l) {
    p.set_layer_sim(l, sim);
    p.set_layer_pref(l, preferences[l]);
  }
  return p;
}

LayeredProblem problem_from_sequences(const GenerationTree& tree, int num_layers,
                                      const std::vector<std::vector<double>>& preferences,
                                      double mutations_mean) {
  if (tree.kind != PayloadKind::kSequence) {
    throw StructuralError("problem_from_sequences: tree does not carry sequences");
  }
  const int n = tree.size();
  check_preferences(preferences, num_layers, n);
  LayeredProblem p(n, num_layers);

  const int len = static_cast<int>(tree.nodes.front().seq.size());
  const double p_mut = 1.0 / (mutations_mean + 1.0);
  std::vector<double> by_distance(len + 1);
  for (int d = 0; d <= len; ++d) by_distance[d] = trunc_geom_log_pmf(p_mut, 0, len, d);

  std::vector<double> sim(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = by_distance[hamming(tree.nodes[i].seq, tree.nodes[j].seq)];
      sim[static_cast<std::size_t>(i) * n + j] = v;
      sim[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  for (int l = 0; l < num_layers; ++l) {
    p.set_layer_sim(l, sim);
    p.set_layer_pref(l, preferences[l]);
  }
  return p;
}

HierarchySolution truth_solution(const GenerationTree& tree) {
  const int n = tree.size();
  const int L = tree.num_layers;
  HierarchySolution sol;
  sol.num_points = n;
  sol.layers.resize(L);
  for (int l = 0; l < L; ++l) {
    LayerAssignment& la = sol.layers[l];
    la.assignment.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      const int origin = tree.nodes[i].layer_of_origin;
      if (origin < l + 1) continue;
      la.active.push_back(i);
      const bool is_exemplar = (l == L - 1) || (origin > l + 1);
      if (is_exemplar) {
        la.exemplars.push_back(i);
        la.assignment[i] = i;
      } else {
        la.assignment[i] = tree.nodes[i].parent;
      }
    }
  }
  return sol;
}

std::vector<int> truth_cluster_counts(const GenerationTree& tree) {
  return truth_solution(tree).cluster_counts();
}

PointCloud featurize(const GenerationTree& tree) {
  PointCloud cloud;
  if (tree.kind == PayloadKind::kPoint2D) {
    cloud.dim = 2;
    for (const auto& nd : tree.nodes) {
      cloud.coords.push_back({nd.point[0], nd.point[1]});
    }
    return cloud;
  }
  const int len = static_cast<int>(tree.nodes.front().seq.size());
  cloud.dim = 4 * len;
  for (const auto& nd : tree.nodes) {
    std::vector<double> x(cloud.dim, 0.0);
    for (int t = 0; t < len; ++t) {
      int sym = 0;
      while (kAlphabet[sym] != nd.seq[t]) ++sym;
      x[4 * t + sym] = 1.0;
    }
    cloud.coords.push_back(std::move(x));
  }
  return cloud;
}

double median_abs_similarity(const LayeredProblem& p) {
  std::vector<double> vals;
  const int n = p.num_points();
  vals.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double s = p.s(0, i, j);
      if (s != kNegInf) vals.push_back(std::abs(s));
    }
  }
  if (vals.empty()) return 1.0;
  const std::size_t mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
  return vals[mid];
}

std::vector<std::vector<double>> draw_decreasing_preferences(
    Rng& rng, int num_layers, int num_points, double lo, double hi, double scale) {
  std::vector<double> draws(num_layers);
  for (double& d : draws) d = rng.uniform(lo, hi);
  // layer 0 gets the least negative value, the top layer the most negative
  std::sort(draws.begin(), draws.end(), std::greater<double>());
  std::vector<std::vector<double>> prefs(num_layers);
  for (int l = 0; l < num_layers; ++l) {
    prefs[l].assign(num_points, draws[l] * scale);
  }
  return prefs;
}

}  // namespace hap
