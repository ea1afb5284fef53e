#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace choquet {

/// Deterministic random source for the sampling routines. Draws are derived
/// from the raw mt19937_64 stream only, never from distribution adaptors,
/// so a fixed seed reproduces the same values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform double in [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    const double unit =
        static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + unit * (hi - lo);
  }

  /// Uniform index in [0, n), n >= 1.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(next() % n);
  }

  /// Uniform integer in [lo, hi] inclusive.
  int integer(int lo, int hi) {
    return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo + 1)));
  }

  bool chance(double p) { return uniform() < p; }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[index(i)]);
    }
    return perm;
  }

  /// k sorted non-decreasing draws from [lo, hi).
  std::vector<double> sorted_uniform(std::size_t k, double lo, double hi) {
    std::vector<double> draws(k);
    for (double& d : draws) d = uniform(lo, hi);
    std::sort(draws.begin(), draws.end());
    return draws;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace choquet
