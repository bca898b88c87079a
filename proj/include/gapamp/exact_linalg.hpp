#pragma once

#include <optional>

#include "gapamp/int_matrix.hpp"

namespace gapamp {

// Column-style Hermite decomposition B = [H 0] * U with U unimodular.
// H has full column rank; pivot rows are strictly increasing; each pivot is
// positive and entries to its left in the pivot row lie in [0, pivot).
// V = U^{-1} satisfies B * V = [H 0], so the trailing columns of V span the
// integer kernel of B.
struct HnfResult {
  IntMatrix H;
  IntMatrix U;
  IntMatrix V;
  std::vector<std::size_t> pivot_rows;
};

HnfResult hnf_decompose(const IntMatrix& b);

IntMatrix gram(const IntMatrix& b);

// Exact determinant of a square integer matrix (Bareiss elimination).
Int bareiss_det(const IntMatrix& m);

// det(B^T B) as an exact integer; the lattice determinant is its square root.
// Rank-deficient input is a contract violation.
Int det_gram(const IntMatrix& b);

bool has_full_column_rank(const IntMatrix& b);

// Basis of {y : S y = 0}; cols(S) - rank(S) columns, possibly zero of them.
IntMatrix integer_kernel(const IntMatrix& s);

// Some integer t with S t = b, or nothing when the system has no solution.
std::optional<IntVec> solve_diophantine(const IntMatrix& s, const IntVec& b);

// Exact inverse of a nonsingular square integer matrix.
RatMatrix rational_inverse(const IntMatrix& b);

bool is_unimodular(const IntMatrix& u);

}  // namespace gapamp
