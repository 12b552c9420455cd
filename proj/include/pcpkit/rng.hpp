#pragma once

#include <cstdint>
#include <random>

#include "pcpkit/config.hpp"

namespace pcpkit {

/// Seeded generator used for every random draw in the library. The
/// uniform mapping is done by hand so draws are identical across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Vector uniform_vector(int n, double lo, double hi) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Matrix uniform_matrix(int rows, int cols, double lo, double hi) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  /// Child generator for an independent stream (e.g. one per multistart).
  Rng split() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace pcpkit
