#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "gapamp/int_matrix.hpp"

namespace gapamp {

// All randomness flows from one 64-bit seed. Each pipeline stage draws from
// its own stream, derived by mixing the seed with a fixed stage tag, so
// changing the draw count in one stage never perturbs another.
namespace stage {
inline constexpr std::uint64_t setcover = 0x5e7c07e6u;
inline constexpr std::uint64_t shift = 0x5a3f7001u;
inline constexpr std::uint64_t hyperplane = 0x4a9b2e55u;
inline constexpr std::uint64_t suite = 0x900d5eedu;
}  // namespace stage

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t state = seed ^ (tag * 0x9e3779b97f4a7c15ULL);
    std::uint64_t derived = splitmix64(state);
    return Rng(splitmix64(state) ^ derived);
  }

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n) by rejection; avoids std::uniform_int_distribution,
  // whose output sequence is not pinned by the standard.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) fail_internal("Rng::below(0)");
    std::uint64_t threshold = (-n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1u) != 0; }

  // Sorted r-subset of {0, ..., n-1} via partial Fisher-Yates.
  std::vector<std::size_t> subset(std::size_t n, std::size_t r) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(r);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gapamp
