#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace reserve_match {

// Deterministic random source.  mt19937_64 output is fully specified by the
// standard, and the derived draws below avoid std::uniform_int_distribution
// (whose algorithm is implementation-defined), so the same seed produces the
// same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n), n > 0.  Rejection sampling keeps it unbiased.
  int below(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return static_cast<int>(x % bound);
  }

  // Uniform in [lo, hi], inclusive.
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

  // Uniform in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& values) {
    for (int i = static_cast<int>(values.size()) - 1; i > 0; --i) {
      std::swap(values[i], values[below(i + 1)]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& values) {
    return values[below(static_cast<int>(values.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace reserve_match
