#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ck/errors.hpp"

namespace ck {

// Self-contained splitmix64 generator so that seeded runs are reproducible
// across standard libraries (std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform integer in [0, n)
  uint64_t below(uint64_t n) {
    require(n > 0, Errc::BadArgument, "rng range must be positive");
    uint64_t mask = ~0ULL;
    if (n <= (1ULL << 63)) {
      uint64_t pow2 = 1;
      while (pow2 < n) pow2 <<= 1;
      mask = pow2 - 1;
    }
    for (;;) {
      uint64_t v = u64() & mask;
      if (v < n) return v;
    }
  }

  // uniform double in [0, 1)
  double real() { return double(u64() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * real(); }

  double gauss() {
    // Box-Muller; one value per call keeps the stream simple.
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = real();
    double u2 = real();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = size_t(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices drawn from [0, n), in shuffled order
  std::vector<size_t> sample(size_t n, size_t k) {
    require(k <= n, Errc::BadArgument, "sample size exceeds population");
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    for (size_t i = 0; i < k; ++i) {
      size_t j = i + size_t(below(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
  }

 private:
  uint64_t state_;
};

}  // namespace ck
