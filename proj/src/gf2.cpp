#include "gapamp/gf2.hpp"

#include <algorithm>
#include <string>

namespace gapamp {

std::size_t gf2_rank(BitMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t piv = m.rows;
    for (std::size_t r = rank; r < m.rows; ++r)
      if (m.get(r, c)) {
        piv = r;
        break;
      }
    if (piv == m.rows) continue;
    m.swap_row(rank, piv);
    for (std::size_t r = 0; r < m.rows; ++r)
      if (r != rank && m.get(r, c)) m.xor_row(r, rank);
    ++rank;
  }
  return rank;
}

BitMatrix gf2_kernel_basis(const BitMatrix& m) {
  BitMatrix a = m;
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols && rank < a.rows; ++c) {
    std::size_t piv = a.rows;
    for (std::size_t r = rank; r < a.rows; ++r)
      if (a.get(r, c)) {
        piv = r;
        break;
      }
    if (piv == a.rows) continue;
    a.swap_row(rank, piv);
    for (std::size_t r = 0; r < a.rows; ++r)
      if (r != rank && a.get(r, c)) a.xor_row(r, rank);
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(a.cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  BitMatrix k(a.cols - rank, a.cols);
  std::size_t out = 0;
  for (std::size_t c = 0; c < a.cols; ++c) {
    if (is_pivot[c]) continue;
    k.set(out, c, true);
    for (std::size_t r = 0; r < rank; ++r)
      if (a.get(r, c)) k.set(out, pivot_col[r], true);
    ++out;
  }
  return k;
}

BitMatrix gf2_kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix z(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i1 = 0; i1 < a.rows; ++i1)
    for (std::size_t j1 = 0; j1 < a.cols; ++j1) {
      if (!a.get(i1, j1)) continue;
      for (std::size_t i2 = 0; i2 < b.rows; ++i2)
        for (std::size_t j2 = 0; j2 < b.cols; ++j2)
          if (b.get(i2, j2)) z.set(i1 * b.rows + i2, j1 * b.cols + j2, true);
    }
  return z;
}

BchParams BchParams::make(std::uint64_t n, std::uint64_t d) {
  auto is_pow2 = [](std::uint64_t v) { return v >= 2 && (v & (v - 1)) == 0; };
  if (!is_pow2(n)) fail_param("parity-check params: N must be a power of two >= 2");
  if (!is_pow2(d)) fail_param("parity-check params: d must be a power of two >= 2");
  if (d >= n) fail_param("parity-check params: d must be smaller than N");
  std::uint64_t log2n = 0;
  while ((1ULL << log2n) < n) ++log2n;
  BchParams p;
  p.n = n;
  p.d = d;
  p.h = (d / 2) * log2n;
  return p;
}

namespace {

// Lexicographic first-fit column search. Columns live in GF(2)^h as bit
// masks; a candidate is admissible iff it is not the XOR of any <= d-1
// already-chosen columns. cnt[k][v] counts size-k chosen subsets XORing to v,
// which makes admission O(1) and push/pop O(2^h * d).
struct ColumnSearch {
  std::uint64_t h, n, d;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::size_t space;
  std::vector<std::vector<std::uint32_t>> cnt;  // cnt[k], k = 0..d-1
  std::vector<std::uint64_t> chosen;

  ColumnSearch(std::uint64_t h_, std::uint64_t n_, std::uint64_t d_, std::uint64_t budget_)
      : h(h_), n(n_), d(d_), budget(budget_), space(std::size_t(1) << h) {
    cnt.assign(d, std::vector<std::uint32_t>(space, 0));
    cnt[0][0] = 1;
  }

  bool admissible(std::uint64_t c) const {
    if (c == 0) return false;
    for (std::uint64_t k = 1; k < d; ++k)
      if (cnt[k][c] != 0) return false;
    return true;
  }

  void push(std::uint64_t c) {
    for (std::uint64_t k = d - 1; k >= 1; --k)
      for (std::size_t v = 0; v < space; ++v)
        if (cnt[k - 1][v] != 0) cnt[k][v ^ c] += cnt[k - 1][v];
    chosen.push_back(c);
  }

  void pop() {
    std::uint64_t c = chosen.back();
    chosen.pop_back();
    for (std::uint64_t k = 1; k < d; ++k)
      for (std::size_t v = 0; v < space; ++v)
        if (cnt[k - 1][v] != 0) cnt[k][v ^ c] -= cnt[k - 1][v];
  }

  bool rows_independent() const {
    BitMatrix m(h, chosen.size());
    for (std::size_t j = 0; j < chosen.size(); ++j)
      for (std::uint64_t i = 0; i < h; ++i)
        if ((chosen[j] >> i) & 1u) m.set(i, j, true);
    return gf2_rank(m) == h;
  }

  // Depth-first over ascending column values; true once n admissible columns
  // with independent rows are in hand.
  bool run(std::uint64_t start) {
    if (chosen.size() == n) return rows_independent();
    for (std::uint64_t c = start; c < space; ++c) {
      if (++nodes > budget)
        fail_resource("bch_parity: column search exceeded its node budget");
      if (!admissible(c)) continue;
      push(c);
      if (run(c + 1)) return true;
      pop();
    }
    return false;
  }
};

}  // namespace

BitMatrix bch_parity(const BchParams& params, std::uint64_t node_budget) {
  const std::uint64_t h = params.h, n = params.n, d = params.d;
  if (h > 22) fail_resource("bch_parity: column search supports h <= 22 (needs 2^h tables)");
  if (d == 2) {
    // d = 2 needs N distinct nonzero columns in GF(2)^(log2 N): only N-1 exist.
    fail_param("bch_parity: column-count demand unsatisfiable at d = 2 (N columns, N-1 nonzero values)");
  }
  if ((1ULL << h) <= n)
    fail_param("bch_parity: column-count demand unsatisfiable (fewer than N usable columns in GF(2)^h)");

  ColumnSearch search(h, n, d, node_budget);
  if (!search.run(1)) fail_param("bch_parity: no d-independent column set exists for these parameters");

  BitMatrix p(static_cast<std::size_t>(h), static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < search.chosen.size(); ++j)
    for (std::uint64_t i = 0; i < h; ++i)
      if ((search.chosen[j] >> i) & 1u) p.set(static_cast<std::size_t>(i), j, true);
  return p;
}

Lattice kernel_mod2_lattice(const BitMatrix& p) {
  const std::size_t n = p.cols;
  BitMatrix k = gf2_kernel_basis(p);
  // Lift each kernel word to a 0/1 column, adjoin 2*e_i, HNF-reduce.
  IntMatrix gens(n, k.rows + n);
  for (std::size_t j = 0; j < k.rows; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (k.get(j, i)) gens.at(i, j) = 1;
  for (std::size_t i = 0; i < n; ++i) gens.at(i, k.rows + i) = 2;
  IntMatrix basis = hnf_decompose(gens).H;
  if (basis.cols != n) fail_internal("kernel_mod2_lattice: expected full rank");
  return Lattice::from_basis_unchecked(std::move(basis));
}

namespace {

std::uint64_t min_weight_of_span(const BitMatrix& gens, std::size_t ceiling) {
  const std::size_t k = gens.rows;
  if (k > ceiling)
    fail_resource("min_distance: codeword space dimension " + std::to_string(k) +
                  " exceeds exhaustive ceiling " + std::to_string(ceiling));
  std::uint64_t best = UINT64_MAX;
  std::vector<std::uint64_t> word(gens.wpr, 0);
  // Gray-code walk over all 2^k combinations, one row-XOR per step.
  for (std::uint64_t g = 1; g < (1ULL << k); ++g) {
    std::uint64_t changed = 0;
    std::uint64_t gray = g ^ (g >> 1), prev = (g - 1) ^ ((g - 1) >> 1);
    std::uint64_t diff = gray ^ prev;
    while (!((diff >> changed) & 1u)) ++changed;
    for (std::size_t w = 0; w < gens.wpr; ++w) word[w] ^= gens.bits[changed * gens.wpr + w];
    std::uint64_t wt = 0;
    for (std::uint64_t w : word) wt += static_cast<std::uint64_t>(__builtin_popcountll(w));
    if (wt != 0 && wt < best) best = wt;
  }
  if (best == UINT64_MAX)
    fail_param("min_distance: code has no nonzero codeword");
  return best;
}

}  // namespace

std::uint64_t min_distance(const BitMatrix& m, CodeForm form, std::size_t ceiling) {
  if (form == CodeForm::generator) return min_weight_of_span(m, ceiling);
  return min_weight_of_span(gf2_kernel_basis(m), ceiling);
}

TensorDistanceReport code_tensor_distance_check(const BitMatrix& g1, const BitMatrix& g2,
                                                std::size_t ceiling) {
  TensorDistanceReport rep;
  rep.d1 = min_distance(g1, CodeForm::generator, ceiling);
  rep.d2 = min_distance(g2, CodeForm::generator, ceiling);
  rep.d_tensor = min_distance(gf2_kron(g1, g2), CodeForm::generator, ceiling);
  rep.product_law = (rep.d_tensor == rep.d1 * rep.d2);
  return rep;
}

CodewordShift sample_codeword_shift(const BitMatrix& p, std::size_t r, Rng& rng) {
  const std::size_t n = p.cols;
  if (r > n) fail_param("sample_codeword_shift: r exceeds the code length");
  BitMatrix k = gf2_kernel_basis(p);
  CodewordShift out;
  out.base.assign(n, 0);
  for (std::size_t j = 0; j < k.rows; ++j) {
    if (!rng.coin()) continue;
    for (std::size_t i = 0; i < n; ++i) out.base[i] ^= k.get(j, i) ? 1 : 0;
  }
  out.flips = rng.subset(n, r);
  out.s.assign(n, Int(0));
  for (std::size_t i = 0; i < n; ++i) out.s[i] = out.base[i];
  for (std::size_t f : out.flips) out.s[f] = (out.s[f] == 0) ? 1 : 0;
  return out;
}

}  // namespace gapamp
