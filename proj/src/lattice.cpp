#include "gapamp/lattice.hpp"

#include <string>

namespace gapamp {

Lattice Lattice::from_basis(IntMatrix b) {
  if (!has_full_column_rank(b)) fail_param("lattice basis has dependent columns");
  return from_basis_unchecked(std::move(b));
}

Lattice Lattice::from_basis_unchecked(IntMatrix b) {
  Lattice l;
  l.ambient = b.rows;
  l.rank = b.cols;
  l.basis = std::move(b);
  return l;
}

TensorVector TensorVector::from_vector(std::size_t n1, std::size_t n2, IntVec v) {
  if (v.size() != n1 * n2) fail_internal("TensorVector: length mismatch");
  return TensorVector{n1, n2, std::move(v)};
}

TensorVector TensorVector::from_matrix(const IntMatrix& w) {
  return TensorVector{w.rows, w.cols, w.a};
}

IntMatrix TensorVector::matrix_view() const {
  IntMatrix w(n1, n2);
  w.a = v;
  return w;
}

Lattice tensor(const Lattice& l1, const Lattice& l2) {
  return Lattice::from_basis_unchecked(kron(l1.basis, l2.basis));
}

Lattice tensor_power(const Lattice& l, unsigned k, std::size_t rank_ceiling) {
  if (k < 1) fail_param("tensor_power: k must be >= 1");
  if (rank_ceiling != 0) {
    // Overflow-safe rank^k check before assembling anything.
    std::size_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (l.rank != 0 && r > rank_ceiling / l.rank + 1) {
        r = rank_ceiling + 1;
        break;
      }
      r *= l.rank;
    }
    if (r > rank_ceiling)
      fail_resource("tensor_power: rank " + std::to_string(l.rank) + "^" + std::to_string(k) +
                    " exceeds ceiling " + std::to_string(rank_ceiling));
  }
  Lattice out = l;
  for (unsigned i = 1; i < k; ++i) out = tensor(out, l);
  return out;
}

RatMatrix dual_basis(const Lattice& l) {
  if (l.ambient != l.rank) fail_param("dual_basis: lattice is not full-rank");
  return transpose(rational_inverse(l.basis));
}

TensorVector identity_tensor_witness(const Lattice& l) {
  if (l.ambient != l.rank) fail_param("identity_tensor_witness: lattice is not full-rank");
  const std::size_t n = l.ambient;
  RatMatrix d = dual_basis(l);
  // Matrix view of sum_i b_i (x) b~_i is B * D^T = B * B^{-1}; force-check it.
  RatMatrix w = mul(RatMatrix::from_int(l.basis), transpose(d));
  IntMatrix wi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (w.at(i, j) != Rat(i == j ? 1 : 0))
        fail_internal("identity_tensor_witness: matrix view is not the identity");
      wi.at(i, j) = (i == j) ? 1 : 0;
    }
  return TensorVector::from_matrix(wi);
}

Lattice congruence_sublattice(const Lattice& l, const IntVec& w, const Int& q) {
  if (w.size() != l.ambient) fail_param("congruence_sublattice: weight vector length mismatch");
  if (q < 2) fail_param("congruence_sublattice: modulus must be >= 2");
  const std::size_t m = l.rank;
  // Pull the congruence back to coefficient space: c = B^T w.
  IntVec c = mul_vec(transpose(l.basis), w);
  // Solutions of <c, y> = 0 mod q are the projection of the integer kernel
  // of the 1 x (m+1) row [c | q]; adjoin q*e_i and HNF-reduce to a basis.
  IntMatrix row(1, m + 1);
  for (std::size_t j = 0; j < m; ++j) row.at(0, j) = c[j];
  row.at(0, m) = q;
  IntMatrix k = integer_kernel(row);
  IntMatrix gens(m, k.cols + m);
  for (std::size_t j = 0; j < k.cols; ++j)
    for (std::size_t i = 0; i < m; ++i) gens.at(i, j) = k.at(i, j);
  for (std::size_t i = 0; i < m; ++i) gens.at(i, k.cols + i) = q;
  IntMatrix coeff = hnf_decompose(gens).H;
  if (coeff.cols != m) fail_internal("congruence_sublattice: coefficient lattice lost rank");
  return Lattice::from_basis_unchecked(mul(l.basis, coeff));
}

Int lp_norm_pow(const IntVec& v, unsigned p) {
  if (p == 0) fail_param("lp_norm_pow: p must be >= 1");
  Int s = 0;
  for (const Int& x : v) {
    Int ax = x < 0 ? Int(-x) : x;
    Int t = 1;
    for (unsigned i = 0; i < p; ++i) t *= ax;
    s += t;
  }
  return s;
}

Int linf_norm(const IntVec& v) {
  Int m = 0;
  for (const Int& x : v) {
    Int ax = x < 0 ? Int(-x) : x;
    if (ax > m) m = ax;
  }
  return m;
}

}  // namespace gapamp
