#pragma once

#include <cstdint>
#include <vector>

#include "gapamp/lattice.hpp"
#include "gapamp/rng.hpp"

namespace gapamp {

// Bit-packed GF(2) matrix; each row is a run of 64-bit words.
struct BitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t wpr = 0;  // words per row
  std::vector<std::uint64_t> bits;

  BitMatrix() = default;
  BitMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), wpr((c + 63) / 64), bits(r * wpr, 0) {}

  bool get(std::size_t r, std::size_t c) const {
    return (bits[r * wpr + c / 64] >> (c % 64)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& w = bits[r * wpr + c / 64];
    std::uint64_t m = 1ULL << (c % 64);
    if (v)
      w |= m;
    else
      w &= ~m;
  }

  void xor_row(std::size_t dst, std::size_t src) {
    for (std::size_t k = 0; k < wpr; ++k) bits[dst * wpr + k] ^= bits[src * wpr + k];
  }

  void swap_row(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < wpr; ++k) std::swap(bits[i * wpr + k], bits[j * wpr + k]);
  }

  bool row_is_zero(std::size_t r) const {
    for (std::size_t k = 0; k < wpr; ++k)
      if (bits[r * wpr + k] != 0) return false;
    return true;
  }

  bool operator==(const BitMatrix& o) const {
    return rows == o.rows && cols == o.cols && bits == o.bits;
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }
};

std::size_t gf2_rank(BitMatrix m);

// Rows of the result form a basis of {x : M x = 0} over GF(2).
BitMatrix gf2_kernel_basis(const BitMatrix& m);

BitMatrix gf2_kron(const BitMatrix& a, const BitMatrix& b);

// Parity-check shape parameters: h = (d/2) * log2(N) rows, N columns.
struct BchParams {
  std::uint64_t n = 0;  // code length N, a power of two
  std::uint64_t d = 0;  // independence parameter, a power of two, d < N
  std::uint64_t h = 0;  // (d/2) * log2(N)

  static BchParams make(std::uint64_t n, std::uint64_t d);
};

// h x N parity-check matrix with independent rows in which every set of at
// most d columns is linearly independent over GF(2). Columns are found by a
// deterministic lexicographic first-fit search with backtracking; parameter
// pairs admitting no such matrix are rejected with the violated constraint.
BitMatrix bch_parity(const BchParams& params, std::uint64_t node_budget = 50'000'000);

// Integer lattice {y in Z^N : P y = 0 mod 2}; full rank N, det^2 = 4^rank(P).
Lattice kernel_mod2_lattice(const BitMatrix& p);

enum class CodeForm { parity_check, generator };

// Exact minimum Hamming weight of a nonzero codeword, by exhaustive walk of
// the codeword space. The walked dimension must stay within the ceiling.
std::uint64_t min_distance(const BitMatrix& m, CodeForm form, std::size_t ceiling = 20);

struct TensorDistanceReport {
  std::uint64_t d1 = 0;
  std::uint64_t d2 = 0;
  std::uint64_t d_tensor = 0;
  bool product_law = false;  // d_tensor == d1 * d2
};

// Distances of two generator-given codes and of their tensor code; asserts
// exact multiplicativity.
TensorDistanceReport code_tensor_distance_check(const BitMatrix& g1, const BitMatrix& g2,
                                                std::size_t ceiling = 20);

struct CodewordShift {
  IntVec s;                        // 0/1 vector of length N
  std::vector<std::uint8_t> base;  // the sampled kernel word
  std::vector<std::size_t> flips;  // the r flipped coordinates, sorted
};

// Uniform kernel word of P with a uniform r-subset of coordinates flipped.
CodewordShift sample_codeword_shift(const BitMatrix& p, std::size_t r, Rng& rng);

}  // namespace gapamp
