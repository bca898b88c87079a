#include "gapamp/analysis.hpp"

namespace gapamp {

TraceDetReport trace_det_bound(const IntMatrix& u, const IntMatrix& w) {
  if (u.cols != w.cols) fail_param("trace_det_bound: factors must share the column count");
  const std::size_t r = u.cols;
  if (!has_full_column_rank(u) || !has_full_column_rank(w))
    fail_param("trace_det_bound: factors must have full column rank");

  IntMatrix g1 = gram(u), g2 = gram(w);
  Int trace = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) trace += g1.at(i, j) * g2.at(j, i);

  IntMatrix prod = mul(u, transpose(w));
  Int flat = 0;
  for (const Int& e : prod.a) flat += e * e;

  TraceDetReport rep;
  rep.lhs_norm_sq = trace;
  rep.trace_agrees = (flat == trace);
  Int pow = 1, rr = 1;
  for (std::size_t i = 0; i < r; ++i) {
    pow *= trace;
    rr *= Int(r);
  }
  rep.lhs_pow = pow;
  rep.rhs = rr * bareiss_det(g1) * bareiss_det(g2);
  rep.holds = rep.lhs_pow >= rep.rhs;
  return rep;
}

namespace {

std::size_t count_nonzero_rows(const IntMatrix& b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < b.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j)
      if (b.at(i, j) != 0) {
        ++count;
        break;
      }
  }
  return count;
}

bool all_entries_even(const IntMatrix& b) {
  for (const Int& e : b.a)
    if (e % 2 != 0) return false;
  return true;
}

}  // namespace

TrichotomyReport trichotomy_classify(const IntMatrix& sublattice_basis, std::uint64_t d) {
  if (!has_full_column_rank(sublattice_basis))
    fail_param("trichotomy_classify: basis must have full column rank");
  const std::size_t r = sublattice_basis.cols;

  TrichotomyReport rep;
  rep.nonzero_rows = count_nonzero_rows(sublattice_basis);
  rep.all_even = all_entries_even(sublattice_basis);
  rep.det_g = bareiss_det(gram(sublattice_basis));
  rep.det_bound = 1;
  for (std::size_t i = 0; i < r; ++i) rep.det_bound *= Int(d);

  if (rep.nonzero_rows >= d)
    rep.property = 1;
  else if (rep.all_even && 4 * rep.nonzero_rows >= d)
    rep.property = 2;
  else if (rep.det_g >= rep.det_bound)
    rep.property = 3;
  else
    rep.property = 0;
  return rep;
}

bool trichotomy_resample_stable(const IntMatrix& sublattice_basis, const TrichotomyReport& rep,
                                std::uint64_t d, std::size_t resamples, Rng& rng) {
  const std::size_t r = sublattice_basis.cols;
  if (rep.property == 3) return true;  // det is basis-invariant
  for (std::size_t t = 0; t < resamples; ++t) {
    IntMatrix b = sublattice_basis;
    // Random unimodular right-multiply: shears and swaps in coefficient space.
    for (std::size_t op = 0; op < 3 * r + 2; ++op) {
      std::size_t i = static_cast<std::size_t>(rng.below(r));
      std::size_t j = static_cast<std::size_t>(rng.below(r));
      if (i == j) {
        if (rng.coin()) b.negate_col(i);
        continue;
      }
      if (rng.coin())
        b.swap_cols(i, j);
      else
        b.addmul_col(j, i, Int(rng.range(-2, 2)));
    }
    std::size_t rows = count_nonzero_rows(b);
    if (rep.property == 1 && rows < d) return false;
    if (rep.property == 2 && (!all_entries_even(b) || 4 * rows < d)) return false;
  }
  return true;
}

TensorLowerBoundReport verify_tensor_lower_bound(const Lattice& l1_no, std::uint64_t d,
                                                 const Lattice& l2, std::size_t ceiling) {
  Lattice t = tensor(l1_no, l2);
  if (t.rank > ceiling)
    fail_resource("verify_tensor_lower_bound: tensor rank " + std::to_string(t.rank) +
                  " exceeds ceiling " + std::to_string(ceiling));
  TensorLowerBoundReport rep;
  rep.lambda_sq_tensor = lambda1_exact(t, ceiling).norm_sq;
  rep.lambda_sq_l2 = lambda1_exact(l2, ceiling).norm_sq;
  rep.required = Int(d) * rep.lambda_sq_l2;
  rep.holds = rep.lambda_sq_tensor >= rep.required;
  return rep;
}

SublatticeFactor sublattice_factor(const IntMatrix& x, const IntMatrix& b1, const IntMatrix& b2) {
  bool zero = true;
  for (const Int& e : x.a)
    if (e != 0) {
      zero = false;
      break;
    }
  if (zero) fail_param("sublattice_factor: zero coefficient matrix");
  if (b1.cols != x.rows || b2.cols != x.cols) fail_param("sublattice_factor: shape mismatch");

  HnfResult h = hnf_decompose(x);
  const std::size_t r = h.H.cols;
  // X = [H 0] U, so B1 X B2^T = (B1 H) (B2 * U_top^T)^T with U_top the first
  // r rows of U.
  IntMatrix u_top(r, h.U.cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.U.cols; ++j) u_top.at(i, j) = h.U.at(i, j);

  SublatticeFactor out;
  out.b1 = mul(b1, h.H);
  out.b2 = mul(b2, transpose(u_top));
  return out;
}

}  // namespace gapamp
