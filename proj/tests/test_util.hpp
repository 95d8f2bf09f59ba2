#ifndef TROP_TESTS_TEST_UTIL_HPP
#define TROP_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <random>

#include "trop/types.hpp"

namespace trop::testutil {

// Deterministic draws built on the raw engine output; identical sequences on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Vec point(int dim, double lo, double hi) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  Vec direction(int dim) {
    while (true) {
      Vec v = point(dim, -1.0, 1.0);
      const double norm = v.norm();
      if (norm > 1e-3 && norm <= 1.0) return v / norm;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace trop::testutil

#endif
