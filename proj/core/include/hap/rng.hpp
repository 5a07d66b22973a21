#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace hap {

// Stream identifier recorded in generated-file metadata. mt19937_64 raw
// output is pinned by the standard, and every mapping to doubles/ints below
// is implemented here rather than taken from <random> distributions, so the
// streams are reproducible across platforms and standard libraries.
inline constexpr const char* kRngStreamId = "hap.mt19937_64.v1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0,1) with 53 random bits
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // unbiased uniform in [0, range), range >= 1
  std::uint64_t bounded(std::uint64_t range) {
    const std::uint64_t threshold = (0 - range) % range;
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= threshold) return x % range;
    }
  }

  // inclusive bounds
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(bounded(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Box-Muller; consumes exactly two uniforms per call
  double normal(double mean, double stddev) {
    double u1 = uniform01();
    const double u2 = uniform01();
    if (u1 == 0.0) u1 = 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586;
    return mean + stddev * radius * std::cos(kTwoPi * u2);
  }

  // m distinct values from [0, n), in draw order (partial Fisher-Yates)
  std::vector<int> sample_distinct(int n, int m) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int t = 0; t < m; ++t) {
      const int j = uniform_int(t, n - 1);
      std::swap(idx[t], idx[j]);
    }
    idx.resize(m);
    return idx;
  }

  // deterministic substream derived from the original seed
  Rng child(std::uint64_t index) const {
    return Rng(splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * (index + 1)));
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace hap
