#include "hap/problem.hpp"

#include <cmath>
#include <cstdio>

namespace hap {

LayeredProblem::LayeredProblem(int num_points, int num_layers)
    : n_(num_points), num_layers_(num_layers) {
  if (num_points < 1 || num_layers < 1) {
    throw StructuralError("LayeredProblem needs at least one point and one layer");
  }
  sim_.assign(num_layers, std::vector<double>(static_cast<std::size_t>(n_) * n_, 0.0));
  pref_.assign(num_layers, std::vector<double>(n_, 0.0));
}

void LayeredProblem::set_layer_sim(int l, std::vector<double> row_major) {
  if (l < 0 || l >= num_layers_) throw StructuralError("layer index out of range");
  if (row_major.size() != static_cast<std::size_t>(n_) * n_) {
    throw StructuralError("similarity matrix size mismatch");
  }
  sim_[l] = std::move(row_major);
}

void LayeredProblem::set_layer_pref(int l, std::vector<double> prefs) {
  if (l < 0 || l >= num_layers_) throw StructuralError("layer index out of range");
  if (prefs.size() != static_cast<std::size_t>(n_)) {
    throw StructuralError("preference vector size mismatch");
  }
  pref_[l] = std::move(prefs);
}

void LayeredProblem::zero_diagonal() {
  for (int l = 0; l < num_layers_; ++l) {
    for (int j = 0; j < n_; ++j) sim_[l][static_cast<std::size_t>(j) * n_ + j] = 0.0;
  }
}

namespace {

std::string at(const char* what, int l, int i, int j) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s at (l=%d,i=%d,j=%d)", what, l, i, j);
  return buf;
}

std::string at(const char* what, int l, int j) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s at (l=%d,j=%d)", what, l, j);
  return buf;
}

}  // namespace

ValidationReport validate_problem(const LayeredProblem& p) {
  ValidationReport rep;
  const int n = p.num_points();
  const int L = p.num_layers();
  if (n < 1 || L < 1) {
    rep.violations.push_back("empty problem");
    return rep;
  }
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < n; ++i) {
      bool row_has_finite = false;
      for (int j = 0; j < n; ++j) {
        const double v = p.s(l, i, j);
        if (std::isnan(v)) {
          rep.violations.push_back(at("NaN similarity", l, i, j));
          continue;
        }
        if (v == kNegInf) {
          if (i == j) rep.violations.push_back(at("-inf diagonal", l, j));
          continue;
        }
        if (std::isinf(v)) {
          rep.violations.push_back(at("+inf similarity", l, i, j));
          continue;
        }
        if (i == j && v != 0.0) {
          rep.violations.push_back(at("nonzero diagonal", l, j));
        }
        row_has_finite = true;
      }
      if (!row_has_finite) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "no finite similarity in row (l=%d,i=%d)", l, i);
        rep.violations.push_back(buf);
      }
    }
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(p.c(l, j))) {
        rep.violations.push_back(at("non-finite preference", l, j));
      }
    }
  }
  return rep;
}

}  // namespace hap
