#include "gapamp/exact_linalg.hpp"

#include <cstdlib>

namespace gapamp {

namespace {

// Floor division for exact integer quotients with sign handling.
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Nearest-integer quotient; ties go toward negative infinity.
Int round_div(const Int& a, const Int& b) {
  Int bb = b < 0 ? Int(-b) : b;
  Int aa = b < 0 ? Int(-a) : a;
  return floor_div(2 * aa + bb, 2 * bb);
}

struct HnfWorker {
  IntMatrix work;  // becomes [H 0]
  IntMatrix u;     // accumulates U with B = work * u invariant
  IntMatrix v;     // accumulates V = U^{-1} with work = B * v invariant

  explicit HnfWorker(const IntMatrix& b)
      : work(b), u(IntMatrix::identity(b.cols)), v(IntMatrix::identity(b.cols)) {}

  void swap(std::size_t i, std::size_t j) {
    work.swap_cols(i, j);
    v.swap_cols(i, j);
    u.swap_rows(i, j);
  }

  void negate(std::size_t j) {
    work.negate_col(j);
    v.negate_col(j);
    u.negate_row(j);
  }

  // col_dst += lambda * col_src on work/V; the inverse op on U rows.
  void addmul(std::size_t dst, std::size_t src, const Int& lambda) {
    work.addmul_col(dst, src, lambda);
    v.addmul_col(dst, src, lambda);
    u.addmul_row(src, dst, -lambda);
  }
};

}  // namespace

HnfResult hnf_decompose(const IntMatrix& b) {
  HnfWorker w(b);
  const std::size_t n = b.rows, m = b.cols;
  std::vector<std::size_t> pivot_rows;
  std::size_t col = 0;

  for (std::size_t row = 0; row < n && col < m; ++row) {
    // Gcd-chain all active columns until one nonzero entry remains in this row.
    while (true) {
      std::size_t best = m;
      for (std::size_t j = col; j < m; ++j) {
        if (w.work.at(row, j) == 0) continue;
        if (best == m || abs(w.work.at(row, j)) < abs(w.work.at(row, best))) best = j;
      }
      if (best == m) break;
      if (best != col) w.swap(col, best);
      bool others = false;
      for (std::size_t j = col + 1; j < m; ++j) {
        const Int& e = w.work.at(row, j);
        if (e == 0) continue;
        Int q = round_div(e, w.work.at(row, col));
        if (q != 0) w.addmul(j, col, -q);
        if (w.work.at(row, j) != 0) others = true;
      }
      if (!others) break;
    }
    if (w.work.at(row, col) == 0) continue;
    if (w.work.at(row, col) < 0) w.negate(col);
    // Reduce earlier columns at this pivot row into [0, pivot).
    const Int& p = w.work.at(row, col);
    for (std::size_t l = 0; l < col; ++l) {
      Int q = floor_div(w.work.at(row, l), p);
      if (q != 0) w.addmul(l, col, -q);
    }
    pivot_rows.push_back(row);
    ++col;
  }

  HnfResult res;
  res.pivot_rows = pivot_rows;
  res.H = IntMatrix(n, pivot_rows.size());
  for (std::size_t j = 0; j < pivot_rows.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) res.H.at(i, j) = w.work.at(i, j);
  res.U = std::move(w.u);
  res.V = std::move(w.v);
  return res;
}

IntMatrix gram(const IntMatrix& b) {
  IntMatrix g(b.cols, b.cols);
  for (std::size_t i = 0; i < b.cols; ++i)
    for (std::size_t j = i; j < b.cols; ++j) {
      Int s = 0;
      for (std::size_t r = 0; r < b.rows; ++r) s += b.at(r, i) * b.at(r, j);
      g.at(i, j) = s;
      g.at(j, i) = s;
    }
  return g;
}

Int bareiss_det(const IntMatrix& m) {
  if (m.rows != m.cols) fail_internal("bareiss_det requires a square matrix");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t piv = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv == n) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = num / prev;  // exact by the Bareiss identity
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

Int det_gram(const IntMatrix& b) {
  Int d = bareiss_det(gram(b));
  if (d == 0) fail_param("det_gram: rank-deficient basis (det(B^T B) = 0)");
  return d;
}

bool has_full_column_rank(const IntMatrix& b) {
  if (b.cols == 0) return true;
  if (b.rows < b.cols) return false;
  return bareiss_det(gram(b)) != 0;
}

IntMatrix integer_kernel(const IntMatrix& s) {
  HnfResult h = hnf_decompose(s);
  const std::size_t rank = h.H.cols, m = s.cols;
  IntMatrix k(m, m - rank);
  for (std::size_t j = 0; j < m - rank; ++j)
    for (std::size_t i = 0; i < m; ++i) k.at(i, j) = h.V.at(i, rank + j);
  return k;
}

std::optional<IntVec> solve_diophantine(const IntMatrix& s, const IntVec& b) {
  if (b.size() != s.rows) fail_param("solve_diophantine: rhs length mismatch");
  HnfResult h = hnf_decompose(s);
  const std::size_t rank = h.H.cols;
  // Staircase solve on pivot rows; exact divisibility is required at each step.
  IntVec z(rank, 0);
  for (std::size_t j = 0; j < rank; ++j) {
    std::size_t r = h.pivot_rows[j];
    Int acc = b[r];
    for (std::size_t l = 0; l < j; ++l) acc -= h.H.at(r, l) * z[l];
    const Int& p = h.H.at(r, j);
    if (acc % p != 0) return std::nullopt;
    z[j] = acc / p;
  }
  // Non-pivot rows must agree as well.
  for (std::size_t r = 0; r < s.rows; ++r) {
    Int acc = 0;
    for (std::size_t j = 0; j < rank; ++j) acc += h.H.at(r, j) * z[j];
    if (acc != b[r]) return std::nullopt;
  }
  IntVec zfull(s.cols, 0);
  for (std::size_t j = 0; j < rank; ++j) zfull[j] = z[j];
  return mul_vec(h.V, zfull);
}

RatMatrix rational_inverse(const IntMatrix& b) {
  if (b.rows != b.cols) fail_param("rational_inverse: matrix not square");
  const std::size_t n = b.rows;
  RatMatrix a = RatMatrix::from_int(b);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a.at(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv == n) fail_param("rational_inverse: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(k, j), a.at(piv, j));
        std::swap(inv.at(k, j), inv.at(piv, j));
      }
    }
    Rat d = a.at(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(k, j) /= d;
      inv.at(k, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a.at(i, k) == 0) continue;
      Rat f = a.at(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(k, j);
        inv.at(i, j) -= f * inv.at(k, j);
      }
    }
  }
  return inv;
}

bool is_unimodular(const IntMatrix& u) {
  if (u.rows != u.cols) return false;
  Int d = bareiss_det(u);
  return d == 1 || d == -1;
}

}  // namespace gapamp
