#pragma once

#include "gapamp/lattice.hpp"
#include "gapamp/rng.hpp"
#include "gapamp/svp.hpp"

namespace gapamp {

// Trace-determinant inequality on two rank-r factors:
// (||U W^T||^2)^r >= r^r * det(U^T U) * det(W^T W), with the left side
// computed both as the flattened norm and as tr(G1 G2).
struct TraceDetReport {
  Int lhs_norm_sq;    // ||U W^T||_F^2 == tr(G1 G2)
  Int lhs_pow;        // (lhs_norm_sq)^r
  Int rhs;            // r^r * det(G1) * det(G2)
  bool holds;         // lhs_pow >= rhs
  bool trace_agrees;  // flattened norm equals tr(G1 G2)
};

TraceDetReport trace_det_bound(const IntMatrix& u, const IntMatrix& w);

// Sublattice classification: (1) >= d nonzero rows; (2) all entries even and
// >= d/4 nonzero rows; (3) det^2 >= d^rank. The first holding property wins;
// none holding is reported explicitly (it would falsify the trichotomy).
struct TrichotomyReport {
  int property = 0;  // 1, 2, 3, or 0 for NONE-HOLD
  std::size_t nonzero_rows = 0;
  bool all_even = false;
  Int det_g;      // det(B^T B), property-3 witness data
  Int det_bound;  // d^rank
};

TrichotomyReport trichotomy_classify(const IntMatrix& sublattice_basis, std::uint64_t d);

// Re-checks the claimed row-support bound of a classification on randomly
// resampled bases of the same sublattice (unimodular right-multiples).
bool trichotomy_resample_stable(const IntMatrix& sublattice_basis, const TrichotomyReport& rep,
                                std::uint64_t d, std::size_t resamples, Rng& rng);

struct TensorLowerBoundReport {
  Int lambda_sq_tensor;
  Int lambda_sq_l2;
  Int required;  // d * lambda_sq_l2
  bool holds;    // lambda_sq_tensor >= required
};

// lambda_1(L1 (x) L2)^2 >= d * lambda_1(L2)^2 for a lattice L1 whose
// sublattices satisfy the trichotomy, by exact enumeration of both sides.
TensorLowerBoundReport verify_tensor_lower_bound(const Lattice& l1_no, std::uint64_t d,
                                                 const Lattice& l2,
                                                 std::size_t ceiling = kDefaultEnumCeiling);

// Factors the tensor vector v = B1 X B2^T through full-column-rank
// sublattice bases: X = [H 0] U gives B1' = B1 H and B2' = the kept columns
// of B2 U^T, with B1' B2'^T = B1 X B2^T exactly.
struct SublatticeFactor {
  IntMatrix b1;
  IntMatrix b2;
};

SublatticeFactor sublattice_factor(const IntMatrix& x, const IntMatrix& b1, const IntMatrix& b2);

}  // namespace gapamp
