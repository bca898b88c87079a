#pragma once

#include "gapamp/exact_linalg.hpp"
#include "gapamp/int_matrix.hpp"

namespace gapamp {

// Integer lattice given by a basis matrix whose columns are the basis
// vectors (ambient rows x rank columns, full column rank).
struct Lattice {
  IntMatrix basis;
  std::size_t ambient = 0;
  std::size_t rank = 0;

  // Validates full column rank; the rank-0 lattice {0} is allowed.
  static Lattice from_basis(IntMatrix b);

  // Skips the rank check; for callers that construct bases known-good.
  static Lattice from_basis_unchecked(IntMatrix b);
};

// A vector of a tensor-product lattice, carried both flattened and as its
// n1 x n2 matrix view. The views are reshapes: v[i*n2 + j] = W[i][j], so
// ||v||^2 = tr(W W^T).
struct TensorVector {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  IntVec v;

  static TensorVector from_vector(std::size_t n1, std::size_t n2, IntVec v);
  static TensorVector from_matrix(const IntMatrix& w);

  IntMatrix matrix_view() const;
  Int norm_sq() const { return gapamp::norm_sq(v); }
};

// Kronecker product of the bases; ambient n1*n2, rank m1*m2.
Lattice tensor(const Lattice& l1, const Lattice& l2);

// k-fold tensor power. rank_ceiling = 0 disables the resource guard
// (assembly-only mode); otherwise rank^k above the ceiling is refused.
Lattice tensor_power(const Lattice& l, unsigned k, std::size_t rank_ceiling);

// Dual basis (B^{-1})^T of a full-rank lattice, over the rationals.
RatMatrix dual_basis(const Lattice& l);

// The vector sum_i b_i (x) b~_i of a full-rank lattice and its dual; its
// matrix view is the identity, so its squared norm is exactly n.
TensorVector identity_tensor_witness(const Lattice& l);

// Sublattice {x in L : <w, x> = 0 mod q}; same rank as L.
Lattice congruence_sublattice(const Lattice& l, const IntVec& w, const Int& q);

// Sum_i |v_i|^p for finite p; comparisons downstream stay on p-th powers.
Int lp_norm_pow(const IntVec& v, unsigned p);

// max_i |v_i|
Int linf_norm(const IntVec& v);

}  // namespace gapamp
