#pragma once

#include "symseq/types.hpp"

#include <cstdint>

namespace symseq {

// Deterministic RNG (splitmix64 core). Doubles are derived from the raw
// bit stream, so sequences are reproducible bit-for-bit across platforms;
// std::uniform_real_distribution would not give that guarantee.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller (no cached spare, for reproducibility
  /// independent of call interleaving).
  double normal() {
    double u1 = uniform(), u2 = uniform();
    if (u1 <= 0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Vec vec_uniform(int n, double a, double b) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(a, b);
    return v;
  }

  Vec vec_normal(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Mat mat_uniform(int m, int n, double a, double b) {
    Mat x(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = uniform(a, b);
    return x;
  }

  Mat mat_sign(int m, int n) {
    Mat x(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = sign();
    return x;
  }

  /// Independent deterministic substream.
  Rng fork(std::uint64_t stream) const {
    Rng r(0);
    r.state_ = state_ ^ (0x6a09e667f3bcc909ull + stream * 0x3c6ef372fe94f82bull);
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace symseq
