#pragma once

#include <cstdint>
#include <vector>

#include "gapamp/lattice.hpp"

namespace gapamp {

inline constexpr std::size_t kDefaultEnumCeiling = 24;

struct SvpResult {
  IntVec vector;       // a shortest nonzero lattice vector
  Int norm_sq;         // exactly ||vector||_2^2
  std::uint64_t nodes = 0;
};

// Norm selector: finite p >= 1 or the max norm.
struct NormSel {
  bool inf = false;
  unsigned p = 2;

  static NormSel l2() { return {false, 2}; }
  static NormSel finite(unsigned p) { return {false, p}; }
  static NormSel max() { return {true, 0}; }
};

// Same lattice, Lovasz-reduced basis with parameter delta. Exact rational
// Gram-Schmidt throughout; no floating point.
Lattice lll_reduce(const Lattice& l, const Rat& delta = Rat(99, 100));

bool is_lll_reduced(const Lattice& l, const Rat& delta = Rat(99, 100));

// Exact lambda_1 w.r.t. l2, by depth-first enumeration over the reduced
// basis. Pruning compares exact rational partial norms; leaves re-verify in
// integers. Deterministic for fixed input.
SvpResult lambda1_exact(const Lattice& l, std::size_t ceiling = kDefaultEnumCeiling);

// Every nonzero lattice vector v with ||v||_2^2 <= bound_sq, one per +-pair,
// canonicalized so the first nonzero coordinate is positive.
std::vector<IntVec> enumerate_ball(const Lattice& l, const Int& bound_sq,
                                   std::size_t ceiling = kDefaultEnumCeiling,
                                   std::uint64_t* nodes = nullptr);

struct LpResult {
  IntVec vector;
  Int value;  // sum |v_i|^p for finite p; max |v_i| for the max norm
  NormSel p;
  std::uint64_t nodes = 0;
};

// Exact lambda_1 w.r.t. lp. Realized by l2 ball enumeration with the radius
// bridged through norm-comparison inequalities, all on integer powers.
LpResult lambda1_lp(const Lattice& l, NormSel p, std::size_t ceiling = kDefaultEnumCeiling);

struct MinkowskiReport {
  Int det_g;       // det(B^T B)
  Int lambda_sq;   // lambda_1^2
  Int lhs;         // det_g * r^r
  Int rhs;         // (lambda_sq)^r
  bool holds;      // lhs >= rhs
};

// det(L)^2 >= (lambda_1^2 / r)^r, compared as det_g * r^r >= (lambda_sq)^r.
MinkowskiReport minkowski_check(const Lattice& l, std::size_t ceiling = kDefaultEnumCeiling);

enum class GapVerdict { yes, no, indeterminate };

// Promise-problem instance (B, s) under norm p. gamma is carried as
// gamma^p for finite p (gamma itself need not be rational) and as plain
// gamma for the max norm; the serialized file format carries only s and p.
struct GapInstance {
  IntMatrix basis;
  Rat threshold;
  NormSel p = NormSel::l2();
  Rat gamma_pow = 1;
};

// yes when lambda_1 <= gamma*s, no when lambda_1 > s, indeterminate between;
// all comparisons on p-th powers.
GapVerdict decide_gap(const GapInstance& inst, std::size_t ceiling = kDefaultEnumCeiling);

// floor(x^(1/k)) for x >= 0.
Int kth_root_floor(const Int& x, unsigned k);

}  // namespace gapamp
