#pragma once

#include <cstdint>
#include <vector>

#include "compoundkit/matrix.hpp"

namespace ck {

/// splitmix64 stream; deterministic across platforms so seeded runs reproduce
/// byte-identical reports.
class rng {
 public:
  explicit rng(std::uint64_t seed = 42) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  std::vector<double> vector(int n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  rmatrix matrix_uniform(int rows, int cols, double lo = -1.0, double hi = 1.0) {
    rmatrix m(rows, cols);
    for (double& x : m.data()) x = uniform(lo, hi);
    return m;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ck
