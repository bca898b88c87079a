#pragma once

#include <optional>

#include "gapamp/gf2.hpp"
#include "gapamp/lattice.hpp"
#include "gapamp/rng.hpp"
#include "gapamp/svp.hpp"

namespace gapamp {

// Exact-cover-style instance: sets over a universe [1, n''], with the
// distance parameter d and density eta attached.
struct SetCoverInstance {
  std::size_t universe = 0;                    // n''
  std::vector<std::vector<std::size_t>> sets;  // n' sets, 1-indexed elements
  std::uint64_t d = 0;
  Rat eta;

  void validate() const;
  std::size_t n_sets() const { return sets.size(); }
};

// 0/1 incidence matrix, n'' rows x n' columns; column j indicates set j.
IntMatrix incidence(const SetCoverInstance& inst);

enum class Scale { paper, desk };

struct ReductionParams {
  Rat eta;
  std::uint64_t d = 0;
  std::uint64_t r = 0;       // (3/4 + eta) * d
  Int n_code;                // code length N (a power of two; huge in paper mode)
  std::uint64_t log2_n = 0;  // log2(N)
  std::uint64_t h = 0;       // (d/2) * log2(N)
  Rat gamma_sq;              // 3/4 + 5*eta == (4*eta*d + r)/d
  unsigned k = 1;
  std::uint64_t seed = 0;
  Scale scale = Scale::desk;

  static ReductionParams desk(std::uint64_t seed, unsigned k = 1, std::uint64_t d = 4,
                              std::uint64_t n_code = 16, const Rat& eta = Rat(1, 2));
  // Paper-scale constants: eta = 1/128 and N = d^(2/eta); count arithmetic
  // only, no lattice at this scale fits in memory.
  static ReductionParams paper(std::uint64_t seed, std::uint64_t d, unsigned k = 1);

  void validate() const;
  std::uint64_t eta_d() const;  // eta * d as an exact integer
};

enum class InstanceKind { yes, no };

SetCoverInstance gen_setcover(InstanceKind kind, const ReductionParams& params, Rng& rng);

// Exhaustive check that no sub-collection of fewer than d sets covers the
// universe. Only feasible at desk sizes (2^n' subsets).
bool certify_no_cover(const SetCoverInstance& inst);

// Exhaustive search for an exact cover by exactly eta*d sets.
std::optional<std::vector<std::size_t>> find_exact_cover(const SetCoverInstance& inst,
                                                         std::uint64_t cover_size);

struct CvpStep {
  bool degenerate = false;  // no integer t with S t = -1 exists
  Lattice b_cvp;            // basis of {y : S y = 0}
  IntVec t;
};

CvpStep cvp_step(const SetCoverInstance& inst);

// Block assembly: columns [2*B_CVP | 0], [0 | B_BCH], and the glue column
// (2t, s). Rank is rank(B_CVP) + N + 1.
Lattice assemble_intermediate(const Lattice& b_cvp, const IntVec& t, const BitMatrix& p_bch,
                              const IntVec& s, const ReductionParams& params);

// G = floor(N^((1/4+eta)d) / (100 d^d)), A = d^(d/4) * binom(N + n', d/4).
std::pair<Int, Int> count_bounds(const ReductionParams& params, std::uint64_t n_prime);

struct PipelineCertificate {
  Int g_bound;
  Int a_bound;
  Int q;
  IntVec w;  // hyperplane weights, one per intermediate ambient coordinate
  IntVec s;  // codeword shift
  IntVec t;  // CVP target
  std::uint64_t seed = 0;
  IntMatrix intermediate_basis;
  IntMatrix final_basis;  // sparsified base (before tensoring)
};

struct SparsifyResult {
  Lattice sublattice;
  Int q;
  IntVec w;
};

// Prime selection: explicit override when given (must be prime), otherwise
// the smallest prime >= 100A, which must stay within [100A, G/100]; an empty
// interval without an override is a parameter error.
SparsifyResult sparsify(const Lattice& b_int, const Int& g_bound, const Int& a_bound, Rng& rng,
                        const std::optional<Int>& q_override);

// Materializes 2*(B_CVP y - t) concat (B_BCH x - s) and asserts the
// good-vector shape: all coordinates in {0,1,2} with at least one 1.
IntVec good_vector_witness(const Lattice& b_cvp, const IntVec& t, const IntVec& y,
                           const BitMatrix& p_bch, const IntVec& s, const IntVec& x);

struct AnnoyingReport {
  bool annoying = false;
  // When not annoying: the first structural clause that holds.
  // 1: >= d nonzero coordinates; 2: all even with >= d/4 nonzeros;
  // 3: all even with norm^2 >= d^2.
  int clause = 0;
};

AnnoyingReport annoying_check(const IntVec& v, std::uint64_t d);

struct PipelineRun {
  InstanceKind kind = InstanceKind::no;
  bool certified = false;   // NO instances: exhaustive certification passed
  bool degenerate = false;  // CVP step had no target; output is a stock NO instance
  ReductionParams params;
  PipelineCertificate cert;
  Lattice intermediate;
  Lattice base;    // k = 1 lattice after sparsification
  Lattice output;  // k-fold tensor power of base
  GapInstance instance;

  // YES-side metadata
  std::vector<std::size_t> planted;  // exact-cover set indices
  IntVec witness;                    // good vector in the intermediate lattice
  Int witness_norm_sq;
  std::uint64_t shift_distance = 0;  // Hamming distance of s from the code
  bool shift_at_full_distance = false;
};

// Full three-step reduction plus k-fold tensoring. rank_ceiling = 0 leaves
// the tensor stage in assembly-only mode.
PipelineRun run_pipeline(const SetCoverInstance& inst, const ReductionParams& params,
                         const std::optional<Int>& q_override = std::nullopt,
                         std::size_t rank_ceiling = 0);

}  // namespace gapamp
