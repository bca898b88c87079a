#include "gapamp/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "gapamp/exact_linalg.hpp"

namespace gapamp {

namespace {

Int int_pow(Int base, std::uint64_t e) {
  Int acc = 1;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Int binomial(const Int& n, std::uint64_t k) {
  if (n < 0) fail_internal("binomial with negative upper index");
  if (Int(k) > n) return 0;
  Int acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= n - Int(i - 1);
    Int q = acc / Int(i);
    if (q * Int(i) != acc) fail_internal("binomial division not exact");
    acc = q;
  }
  return acc;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::uint64_t log2_exact(const Int& v) {
  if (v <= 0) fail_param("log2 of non-positive value");
  Int x = v;
  std::uint64_t e = 0;
  while ((x & 1) == 0) {
    x >>= 1;
    ++e;
  }
  if (x != 1) fail_param("value is not a power of two");
  return e;
}

}  // namespace

void SetCoverInstance::validate() const {
  if (universe == 0) fail_param("set-cover universe must be nonempty");
  if (sets.empty()) fail_param("set-cover instance needs at least one set");
  for (const auto& s : sets) {
    if (s.empty()) fail_param("set-cover sets must be nonempty");
    for (std::size_t e : s) {
      if (e < 1 || e > universe) fail_param("set element out of universe range");
    }
  }
  if (d == 0 || !is_power_of_two(d)) fail_param("d must be a positive power of two");
  Rat ed = eta * Rat(d);
  if (ed <= 0 || denominator(ed) != 1) fail_param("eta*d must be a positive integer");
}

IntMatrix incidence(const SetCoverInstance& inst) {
  IntMatrix s(inst.universe, inst.sets.size());
  for (std::size_t j = 0; j < inst.sets.size(); ++j) {
    for (std::size_t e : inst.sets[j]) s.at(e - 1, j) = 1;
  }
  return s;
}

ReductionParams ReductionParams::desk(std::uint64_t seed, unsigned k, std::uint64_t d,
                                      std::uint64_t n_code, const Rat& eta) {
  ReductionParams p;
  p.eta = eta;
  p.d = d;
  p.n_code = Int(n_code);
  p.k = k;
  p.seed = seed;
  p.scale = Scale::desk;
  Rat r = (Rat(3, 4) + eta) * Rat(d);
  if (denominator(r) != 1) fail_param("(3/4 + eta)*d must be an integer");
  p.r = static_cast<std::uint64_t>(numerator(r));
  p.log2_n = log2_exact(p.n_code);
  p.h = (d / 2) * p.log2_n;
  p.gamma_sq = Rat(4) * eta + r / Rat(d);  // (4*eta*d + r)/d == 3/4 + 5*eta
  p.validate();
  return p;
}

ReductionParams ReductionParams::paper(std::uint64_t seed, std::uint64_t d, unsigned k) {
  ReductionParams p;
  p.eta = Rat(1, 128);
  p.d = d;
  p.k = k;
  p.seed = seed;
  p.scale = Scale::paper;
  Rat r = (Rat(3, 4) + p.eta) * Rat(d);
  if (denominator(r) != 1) fail_param("(3/4 + eta)*d must be an integer");
  p.r = static_cast<std::uint64_t>(numerator(r));
  std::uint64_t log2_d = log2_exact(Int(d));
  p.log2_n = 256 * log2_d;  // N = d^(2/eta) = d^256
  p.n_code = int_pow(Int(2), p.log2_n);
  p.h = (d / 2) * p.log2_n;
  p.gamma_sq = Rat(3, 4) + Rat(5) * p.eta;
  p.validate();
  return p;
}

void ReductionParams::validate() const {
  if (d == 0 || !is_power_of_two(d)) fail_param("d must be a positive power of two");
  if (eta <= 0) fail_param("eta must be positive");
  if (k == 0) fail_param("tensor exponent k must be at least 1");
  Rat rr = (Rat(3, 4) + eta) * Rat(d);
  if (denominator(rr) != 1 || Int(r) != numerator(rr)) {
    fail_param("r must equal (3/4 + eta)*d exactly");
  }
  if (n_code <= 1) fail_param("code length must exceed 1");
  if (log2_exact(n_code) != log2_n) fail_param("log2_n inconsistent with n_code");
  if (h != (d / 2) * log2_n) fail_param("h must equal (d/2)*log2(N)");
  if (scale == Scale::paper) {
    if (eta != Rat(1, 128)) fail_param("paper scale fixes eta = 1/128");
    if (n_code != int_pow(Int(d), 256)) fail_param("paper scale fixes N = d^(2/eta)");
    if (gamma_sq >= 1) fail_param("paper-scale gamma^2 must stay below 1");
  } else {
    if (Int(r) > n_code) fail_param("desk scale needs r <= N");
    if (Int(h) >= n_code) fail_param("desk scale needs h < N");
  }
}

std::uint64_t ReductionParams::eta_d() const {
  Rat ed = eta * Rat(d);
  if (denominator(ed) != 1 || ed <= 0) fail_param("eta*d must be a positive integer");
  return static_cast<std::uint64_t>(numerator(ed));
}

namespace {

// Random nonempty subset of [1, n], sorted.
std::vector<std::size_t> random_nonempty_subset(std::size_t n, Rng& rng) {
  while (true) {
    std::vector<std::size_t> out;
    for (std::size_t e = 1; e <= n; ++e) {
      if (rng.coin()) out.push_back(e);
    }
    if (!out.empty()) return out;
  }
}

}  // namespace

SetCoverInstance gen_setcover(InstanceKind kind, const ReductionParams& params, Rng& rng) {
  SetCoverInstance inst;
  inst.d = params.d;
  inst.eta = params.eta;
  std::uint64_t cover = params.eta_d();
  if (kind == InstanceKind::yes) {
    // Partition a universe of 2*cover elements into `cover` planted pairs,
    // then add decoys; the planted sets are an exact cover of size eta*d.
    inst.universe = 2 * static_cast<std::size_t>(cover);
    std::vector<std::size_t> perm(inst.universe);
    for (std::size_t i = 0; i < inst.universe; ++i) perm[i] = i + 1;
    for (std::size_t i = inst.universe; i > 1; --i) {
      std::swap(perm[i - 1], perm[rng.below(i)]);
    }
    std::vector<std::vector<std::size_t>> planted;
    for (std::uint64_t c = 0; c < cover; ++c) {
      std::vector<std::size_t> pair = {perm[2 * c], perm[2 * c + 1]};
      std::sort(pair.begin(), pair.end());
      planted.push_back(pair);
    }
    std::size_t decoys = inst.universe;
    std::vector<std::vector<std::size_t>> all = planted;
    for (std::size_t i = 0; i < decoys; ++i) all.push_back(random_nonempty_subset(inst.universe, rng));
    for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
    inst.sets = all;
    inst.validate();
    if (!find_exact_cover(inst, cover)) fail_internal("planted cover lost in shuffle");
    return inst;
  }
  // NO instance: singletons force any cover to use >= n'' sets, and the two
  // overlapping doubletons cannot shortcut below d sets. Certified below.
  inst.universe = static_cast<std::size_t>(params.d) + 2;
  for (std::size_t e = 1; e <= inst.universe; ++e) inst.sets.push_back({e});
  std::size_t a = 1 + rng.below(inst.universe);
  std::size_t b = 1 + rng.below(inst.universe);
  while (b == a) b = 1 + rng.below(inst.universe);
  std::size_t c = 1 + rng.below(inst.universe);
  while (c == a || c == b) c = 1 + rng.below(inst.universe);
  std::vector<std::size_t> d1 = {a, b};
  std::vector<std::size_t> d2 = {b, c};
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());
  inst.sets.push_back(d1);
  inst.sets.push_back(d2);
  for (std::size_t i = inst.sets.size(); i > 1; --i) {
    std::swap(inst.sets[i - 1], inst.sets[rng.below(i)]);
  }
  inst.validate();
  if (!certify_no_cover(inst)) fail_internal("NO construction failed certification");
  return inst;
}

bool certify_no_cover(const SetCoverInstance& inst) {
  std::size_t n = inst.sets.size();
  if (n > 24) fail_resource("exhaustive cover certification needs at most 24 sets");
  std::vector<std::uint64_t> masks(n, 0);
  if (inst.universe > 63) fail_resource("exhaustive cover certification needs universe <= 63");
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t e : inst.sets[j]) masks[j] |= std::uint64_t(1) << (e - 1);
  }
  std::uint64_t full = (std::uint64_t(1) << inst.universe) - 1;
  for (std::uint64_t pick = 1; pick < (std::uint64_t(1) << n); ++pick) {
    if (static_cast<std::uint64_t>(__builtin_popcountll(pick)) >= inst.d) continue;
    std::uint64_t covered = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (pick & (std::uint64_t(1) << j)) covered |= masks[j];
    }
    if (covered == full) return false;
  }
  return true;
}

std::optional<std::vector<std::size_t>> find_exact_cover(const SetCoverInstance& inst,
                                                         std::uint64_t cover_size) {
  std::size_t n = inst.sets.size();
  if (n > 24) fail_resource("exhaustive exact-cover search needs at most 24 sets");
  if (inst.universe > 63) fail_resource("exhaustive exact-cover search needs universe <= 63");
  std::vector<std::uint64_t> masks(n, 0);
  std::vector<std::size_t> sizes(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t e : inst.sets[j]) masks[j] |= std::uint64_t(1) << (e - 1);
    sizes[j] = inst.sets[j].size();
  }
  std::uint64_t full = (std::uint64_t(1) << inst.universe) - 1;
  std::vector<std::size_t> pick;
  // Exact cover: disjoint union over the picked sets equals the universe.
  std::function<bool(std::size_t, std::uint64_t, std::size_t)> go =
      [&](std::size_t start, std::uint64_t covered, std::size_t used) -> bool {
    if (used == cover_size) return covered == full;
    for (std::size_t j = start; j < n; ++j) {
      if (masks[j] & covered) continue;
      if (sizes[j] != static_cast<std::size_t>(__builtin_popcountll(masks[j]))) {
        fail_internal("duplicate set element");
      }
      pick.push_back(j);
      if (go(j + 1, covered | masks[j], used + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (go(0, 0, 0)) return pick;
  return std::nullopt;
}

CvpStep cvp_step(const SetCoverInstance& inst) {
  CvpStep step;
  IntMatrix s = incidence(inst);
  IntMatrix ker = integer_kernel(s);
  step.b_cvp = Lattice::from_basis_unchecked(ker);
  IntVec target(inst.universe, Int(-1));
  auto t = solve_diophantine(s, target);
  if (!t) {
    step.degenerate = true;
    return step;
  }
  step.t = *t;
  return step;
}

Lattice assemble_intermediate(const Lattice& b_cvp, const IntVec& t, const BitMatrix& p_bch,
                              const IntVec& s, const ReductionParams& params) {
  if (params.scale != Scale::desk) fail_resource("intermediate assembly is desk-scale only");
  std::size_t n_prime = b_cvp.ambient;
  std::size_t n_code = p_bch.cols;
  if (t.size() != n_prime) fail_param("CVP target length mismatch");
  if (s.size() != n_code) fail_param("shift length mismatch");
  if (p_bch.rows != params.h) fail_param("parity-check row count mismatch");
  Lattice code = kernel_mod2_lattice(p_bch);
  std::size_t rank = b_cvp.rank + code.rank + 1;
  IntMatrix b(n_prime + n_code, rank);
  for (std::size_t j = 0; j < b_cvp.rank; ++j) {
    for (std::size_t i = 0; i < n_prime; ++i) b.at(i, j) = 2 * b_cvp.basis.at(i, j);
  }
  for (std::size_t j = 0; j < code.rank; ++j) {
    for (std::size_t i = 0; i < n_code; ++i) {
      b.at(n_prime + i, b_cvp.rank + j) = code.basis.at(i, j);
    }
  }
  for (std::size_t i = 0; i < n_prime; ++i) b.at(i, rank - 1) = 2 * t[i];
  for (std::size_t i = 0; i < n_code; ++i) b.at(n_prime + i, rank - 1) = s[i];
  return Lattice::from_basis(b);
}

std::pair<Int, Int> count_bounds(const ReductionParams& params, std::uint64_t n_prime) {
  Rat er = (Rat(1, 4) + params.eta) * Rat(params.d);
  if (denominator(er) != 1 || er <= 0) fail_param("(1/4 + eta)*d must be a positive integer");
  std::uint64_t e = static_cast<std::uint64_t>(numerator(er));
  if (params.d % 4 != 0) fail_param("d must be divisible by 4 for the count bounds");
  Int g = int_pow(params.n_code, e) / (Int(100) * int_pow(Int(params.d), params.d));
  Int a = int_pow(Int(params.d), params.d / 4) *
          binomial(params.n_code + Int(n_prime), params.d / 4);
  return {g, a};
}

SparsifyResult sparsify(const Lattice& b_int, const Int& g_bound, const Int& a_bound, Rng& rng,
                        const std::optional<Int>& q_override) {
  SparsifyResult res;
  if (q_override) {
    Int q = *q_override;
    if (q < 2) fail_param("q override must be at least 2");
    if (q > Int(std::uint64_t(1) << 62)) fail_resource("q override too large for primality check");
    if (!is_prime_u64(static_cast<std::uint64_t>(q))) fail_param("q override must be prime");
    res.q = q;
  } else {
    Int low = Int(100) * a_bound;
    Int high = g_bound / Int(100);
    if (low > high) {
      fail_param("prime interval [100A, G/100] is empty; supply a q override");
    }
    if (low > Int(std::uint64_t(1) << 62)) {
      fail_resource("prime search beyond 2^62 not supported");
    }
    std::uint64_t p = static_cast<std::uint64_t>(low);
    if (p < 2) p = 2;
    while (!is_prime_u64(p)) ++p;
    if (Int(p) > high) fail_param("no prime inside [100A, G/100]");
    res.q = Int(p);
  }
  std::uint64_t qi = static_cast<std::uint64_t>(res.q);
  res.w.resize(b_int.ambient);
  for (std::size_t i = 0; i < b_int.ambient; ++i) res.w[i] = Int(rng.below(qi));
  res.sublattice = congruence_sublattice(b_int, res.w, res.q);
  return res;
}

IntVec good_vector_witness(const Lattice& b_cvp, const IntVec& t, const IntVec& y,
                           const BitMatrix& p_bch, const IntVec& s, const IntVec& x) {
  if (y.size() != b_cvp.rank) fail_param("CVP coefficient length mismatch");
  Lattice code = kernel_mod2_lattice(p_bch);
  if (x.size() != code.rank) fail_param("code coefficient length mismatch");
  if (t.size() != b_cvp.ambient) fail_param("CVP target length mismatch");
  if (s.size() != code.ambient) fail_param("shift length mismatch");
  IntVec upper = mul_vec(b_cvp.basis, y);
  IntVec lower = mul_vec(code.basis, x);
  IntVec g(b_cvp.ambient + code.ambient);
  for (std::size_t i = 0; i < b_cvp.ambient; ++i) g[i] = 2 * (upper[i] - t[i]);
  for (std::size_t i = 0; i < code.ambient; ++i) g[b_cvp.ambient + i] = lower[i] - s[i];
  bool has_one = false;
  for (const Int& c : g) {
    if (c < 0 || c > 2) fail_internal("good-vector coordinate outside {0,1,2}");
    if (c == 1) has_one = true;
  }
  if (!has_one) fail_internal("good vector lacks an odd coordinate");
  return g;
}

AnnoyingReport annoying_check(const IntVec& v, std::uint64_t d) {
  AnnoyingReport rep;
  std::uint64_t nonzeros = 0;
  bool all_even = true;
  Int norm = 0;
  for (const Int& c : v) {
    if (c != 0) ++nonzeros;
    if ((c & 1) != 0) all_even = false;
    norm += c * c;
  }
  if (nonzeros >= d) {
    rep.clause = 1;
    return rep;
  }
  if (all_even && 4 * nonzeros >= d) {
    rep.clause = 2;
    return rep;
  }
  if (all_even && norm >= Int(d) * Int(d)) {
    rep.clause = 3;
    return rep;
  }
  rep.annoying = true;
  return rep;
}

namespace {

// Hamming distance from a 0/1 vector to the mod-2 kernel code of p.
std::uint64_t distance_to_code(const BitMatrix& p, const IntVec& s) {
  BitMatrix kb = gf2_kernel_basis(p);
  if (kb.rows > 20) fail_resource("code enumeration over 2^20 words not supported");
  std::vector<std::uint64_t> basis_words(kb.rows, 0);
  if (p.cols > 64) fail_resource("code enumeration needs length <= 64");
  for (std::size_t i = 0; i < kb.rows; ++i) {
    for (std::size_t j = 0; j < kb.cols; ++j) {
      if (kb.get(i, j)) basis_words[i] |= std::uint64_t(1) << j;
    }
  }
  std::uint64_t sw = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if ((s[j] & 1) != 0) sw |= std::uint64_t(1) << j;
  }
  std::uint64_t best = UINT64_MAX;
  std::uint64_t word = 0;
  // Gray-code walk over all codewords.
  best = std::min<std::uint64_t>(best, __builtin_popcountll(sw));
  for (std::uint64_t g = 1; g < (std::uint64_t(1) << kb.rows); ++g) {
    std::uint64_t bit = __builtin_ctzll(g);
    word ^= basis_words[bit];
    best = std::min<std::uint64_t>(best, __builtin_popcountll(word ^ sw));
  }
  return best;
}

PipelineRun degenerate_no_run(const ReductionParams& params, const Rat& threshold) {
  PipelineRun run;
  run.kind = InstanceKind::no;
  run.certified = true;
  run.degenerate = true;
  run.params = params;
  if (denominator(threshold) != 1) fail_internal("degenerate threshold must be integral");
  IntMatrix b(1, 1);
  b.at(0, 0) = numerator(threshold) + 1;
  run.base = Lattice::from_basis(b);
  run.output = run.base;
  run.instance.basis = b;
  run.instance.threshold = threshold;
  run.instance.p = NormSel::l2();
  run.instance.gamma_pow = 1;
  return run;
}

}  // namespace

PipelineRun run_pipeline(const SetCoverInstance& inst, const ReductionParams& params,
                         const std::optional<Int>& q_override, std::size_t rank_ceiling) {
  inst.validate();
  params.validate();
  if (inst.d != params.d || inst.eta != params.eta) {
    fail_param("instance and reduction parameters disagree on d or eta");
  }
  if (params.scale != Scale::desk) fail_resource("full pipeline runs at desk scale only");

  // Threshold d^(k/2): d^k must be a perfect square.
  Int dk = int_pow(Int(params.d), params.k);
  Int root = kth_root_floor(dk, 2);
  if (root * root != dk) fail_param("d^k must be a perfect square for the threshold");
  Rat threshold(root);

  CvpStep step = cvp_step(inst);
  if (step.degenerate) return degenerate_no_run(params, threshold);

  PipelineRun run;
  run.params = params;

  auto cover = find_exact_cover(inst, params.eta_d());
  if (cover) {
    run.kind = InstanceKind::yes;
    run.certified = true;
    run.planted = *cover;
  } else {
    run.kind = InstanceKind::no;
    run.certified = certify_no_cover(inst);
  }

  if (params.log2_n > 22) fail_resource("desk pipeline needs log2(N) <= 22");
  BchParams bp = BchParams::make(static_cast<std::uint64_t>(params.n_code), params.d);
  BitMatrix p_bch = bch_parity(bp);

  Rng shift_rng = Rng::stream(params.seed, stage::shift);
  CodewordShift shift = sample_codeword_shift(p_bch, params.r, shift_rng);
  run.intermediate = assemble_intermediate(step.b_cvp, step.t, p_bch, shift.s, params);

  auto [g_bound, a_bound] = count_bounds(params, inst.n_sets());
  Rng hyper_rng = Rng::stream(params.seed, stage::hyperplane);
  SparsifyResult sp = sparsify(run.intermediate, g_bound, a_bound, hyper_rng, q_override);
  run.base = sp.sublattice;
  run.output = tensor_power(run.base, params.k, rank_ceiling);

  run.cert.g_bound = g_bound;
  run.cert.a_bound = a_bound;
  run.cert.q = sp.q;
  run.cert.w = sp.w;
  run.cert.s = shift.s;
  run.cert.t = step.t;
  run.cert.seed = params.seed;
  run.cert.intermediate_basis = run.intermediate.basis;
  run.cert.final_basis = run.base.basis;

  run.instance.basis = run.output.basis;
  run.instance.threshold = threshold;
  run.instance.p = NormSel::l2();
  Rat gp = 1;
  for (unsigned i = 0; i < params.k; ++i) gp *= params.gamma_sq;
  run.instance.gamma_pow = gp;

  if (run.kind == InstanceKind::yes) {
    // Witness: indicator of the planted cover solves the CVP step, and the
    // flip pattern lifts to a code coefficient vector.
    IntVec x_ind(inst.n_sets(), Int(0));
    for (std::size_t j : run.planted) x_ind[j] = 1;
    IntVec z(x_ind.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x_ind[i] + step.t[i];
    auto y = solve_diophantine(step.b_cvp.basis, z);
    if (!y) fail_internal("planted cover does not solve the CVP step");
    Lattice code = kernel_mod2_lattice(p_bch);
    IntVec v(code.ambient);
    for (std::size_t i = 0; i < code.ambient; ++i) {
      Int base_bit = Int(shift.base[i]);
      v[i] = base_bit;
    }
    for (std::size_t f : shift.flips) {
      if (shift.base[f] == 0) v[f] = 2;
    }
    auto x = solve_diophantine(code.basis, v);
    if (!x) fail_internal("shifted codeword target not in the code lattice");
    run.witness = good_vector_witness(step.b_cvp, step.t, *y, p_bch, shift.s, *x);
    run.witness_norm_sq = norm_sq(run.witness);
    Rat expect = Rat(4) * params.eta * Rat(params.d) + Rat(params.r);
    if (Rat(run.witness_norm_sq) != expect) fail_internal("witness norm differs from 4*eta*d + r");
    run.shift_distance = distance_to_code(p_bch, shift.s);
    run.shift_at_full_distance = (run.shift_distance == params.r);
  }
  return run;
}

}  // namespace gapamp
