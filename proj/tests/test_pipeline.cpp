#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapamp/exact_linalg.hpp"
#include "gapamp/pipeline.hpp"
#include "test_util.hpp"

using namespace gapamp;
using testutil::make;
using testutil::vec;

namespace {

SetCoverInstance desk_instance(InstanceKind kind, std::uint64_t seed) {
  ReductionParams params = ReductionParams::desk(seed);
  Rng rng = Rng::stream(seed, stage::setcover);
  return gen_setcover(kind, params, rng);
}

std::size_t nonzeros(const IntVec& v) {
  std::size_t n = 0;
  for (const Int& c : v) {
    if (c != 0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("generated YES instances carry a planted exact cover") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SetCoverInstance inst = desk_instance(InstanceKind::yes, seed);
    CHECK(inst.universe == 4);
    inst.validate();
    auto cover = find_exact_cover(inst, 2);
    REQUIRE(cover.has_value());
    // cover indices partition the universe: each element hit exactly once
    std::vector<int> hits(inst.universe, 0);
    for (std::size_t j : *cover) {
      for (std::size_t e : inst.sets[j]) ++hits[e - 1];
    }
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("generated NO instances certify exhaustively") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SetCoverInstance inst = desk_instance(InstanceKind::no, seed);
    CHECK(inst.universe == 6);
    inst.validate();
    CHECK(certify_no_cover(inst));
    CHECK(!find_exact_cover(inst, 2).has_value());
  }
}

TEST_CASE("instance validation rejects malformed input") {
  SetCoverInstance bad;
  bad.universe = 3;
  bad.sets = {{1, 4}};  // element out of range
  bad.d = 4;
  bad.eta = Rat(1, 2);
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.sets = {{}};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("cvp_step on the identity system") {
  SetCoverInstance inst;
  inst.universe = 4;
  inst.sets = {{1}, {2}, {3}, {4}};
  inst.d = 4;
  inst.eta = Rat(1, 2);
  CvpStep step = cvp_step(inst);
  CHECK(!step.degenerate);
  CHECK(step.b_cvp.rank == 0);
  CHECK(step.t == vec({-1, -1, -1, -1}));
}

TEST_CASE("cvp_step solves S t = -1 and spans the kernel") {
  SetCoverInstance inst = desk_instance(InstanceKind::yes, 11);
  CvpStep step = cvp_step(inst);
  REQUIRE(!step.degenerate);
  IntMatrix s = incidence(inst);
  IntVec st = mul_vec(s, step.t);
  for (const Int& c : st) CHECK(c == -1);
  for (std::size_t j = 0; j < step.b_cvp.rank; ++j) {
    IntVec sk = mul_vec(s, step.b_cvp.basis.col(j));
    for (const Int& c : sk) CHECK(c == 0);
  }
}

TEST_CASE("cvp_step reports a degenerate system") {
  SetCoverInstance inst;
  inst.universe = 2;
  inst.sets = {{1}};  // element 2 unreachable: S t = (-1,-1) has no solution
  inst.d = 4;
  inst.eta = Rat(1, 2);
  CvpStep step = cvp_step(inst);
  CHECK(step.degenerate);
}

TEST_CASE("YES instances admit the coset witness") {
  SetCoverInstance inst = desk_instance(InstanceKind::yes, 12);
  CvpStep step = cvp_step(inst);
  REQUIRE(!step.degenerate);
  auto cover = find_exact_cover(inst, 2);
  REQUIRE(cover.has_value());
  IntVec z(inst.n_sets(), Int(0));
  for (std::size_t j : *cover) z[j] = 1;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += step.t[i];
  // z lies in the kernel lattice and z - t is the 0/1 cover indicator
  CHECK(testutil::in_lattice(step.b_cvp.basis, z));
  std::size_t ones = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    Int c = z[i] - step.t[i];
    CHECK((c == 0 || c == 1));
    if (c == 1) ++ones;
  }
  CHECK(ones == 2);
}

TEST_CASE("NO instances keep every target coset far from sparse vectors") {
  SetCoverInstance inst = desk_instance(InstanceKind::no, 13);
  CvpStep step = cvp_step(inst);
  REQUIRE(!step.degenerate);
  REQUIRE(certify_no_cover(inst));
  std::size_t rank = step.b_cvp.rank;
  REQUIRE(rank <= 3);
  std::vector<long> c(rank, -3);
  while (true) {
    IntVec base(inst.n_sets(), Int(0));
    for (std::size_t j = 0; j < rank; ++j) {
      for (std::size_t i = 0; i < base.size(); ++i) {
        base[i] += step.b_cvp.basis.at(i, j) * Int(c[j]);
      }
    }
    for (long j0 = -3; j0 <= 3; ++j0) {
      if (j0 == 0) continue;
      IntVec v = base;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += Int(j0) * step.t[i];
      CHECK(nonzeros(v) >= 4);
    }
    std::size_t i = 0;
    while (i < c.size() && c[i] == 3) c[i++] = -3;
    if (i == c.size()) break;
    ++c[i];
  }
}

TEST_CASE("intermediate assembly shape") {
  ReductionParams params = ReductionParams::desk(14);
  SetCoverInstance inst = desk_instance(InstanceKind::yes, 14);
  CvpStep step = cvp_step(inst);
  REQUIRE(!step.degenerate);
  BitMatrix p = bch_parity(BchParams::make(16, 4));
  Rng rng = Rng::stream(14, stage::shift);
  CodewordShift shift = sample_codeword_shift(p, 5, rng);
  Lattice b_int = assemble_intermediate(step.b_cvp, step.t, p, shift.s, params);
  CHECK(b_int.ambient == inst.n_sets() + 16);
  CHECK(b_int.rank == step.b_cvp.rank + 16 + 1);
  CHECK(det_gram(b_int.basis) != 0);
  // first n' coordinates of every basis column are even
  for (std::size_t j = 0; j < b_int.rank; ++j) {
    for (std::size_t i = 0; i < inst.n_sets(); ++i) {
      CHECK(b_int.basis.at(i, j) % 2 == 0);
    }
  }
}

TEST_CASE("intermediate assembly with an empty kernel block") {
  ReductionParams params = ReductionParams::desk(15);
  Lattice empty = Lattice::from_basis_unchecked(IntMatrix(4, 0));
  IntVec t(4, Int(-1));
  BitMatrix p = bch_parity(BchParams::make(16, 4));
  Rng rng = Rng::stream(15, stage::shift);
  CodewordShift shift = sample_codeword_shift(p, 5, rng);
  Lattice b_int = assemble_intermediate(empty, t, p, shift.s, params);
  CHECK(b_int.ambient == 20);
  CHECK(b_int.rank == 17);
}

TEST_CASE("count bounds") {
  ReductionParams desk = ReductionParams::desk(16);
  auto [g_desk, a_desk] = count_bounds(desk, 8);
  CHECK(a_desk == 96);  // 4^1 * C(24, 1)
  CHECK(g_desk == 0);   // floor(16^3 / (100 * 4^4))

  ReductionParams paper = ReductionParams::paper(16, 128);
  auto [g_paper, a_paper] = count_bounds(paper, 512);
  CHECK(g_paper > 0);
  CHECK(a_paper > 0);
  CHECK(Int(100000) * a_paper <= g_paper);
}

TEST_CASE("sparsify keeps only the congruent sublattice") {
  ReductionParams params = ReductionParams::desk(17);
  SetCoverInstance inst = desk_instance(InstanceKind::no, 17);
  CvpStep step = cvp_step(inst);
  REQUIRE(!step.degenerate);
  BitMatrix p = bch_parity(BchParams::make(16, 4));
  Rng srng = Rng::stream(17, stage::shift);
  CodewordShift shift = sample_codeword_shift(p, 5, srng);
  Lattice b_int = assemble_intermediate(step.b_cvp, step.t, p, shift.s, params);
  auto [g, a] = count_bounds(params, inst.n_sets());

  Rng h1 = Rng::stream(17, stage::hyperplane);
  SparsifyResult sp = sparsify(b_int, g, a, h1, Int(97));
  CHECK(sp.q == 97);
  CHECK(sp.sublattice.rank == b_int.rank);
  for (std::size_t j = 0; j < sp.sublattice.rank; ++j) {
    Int ip = dot(sp.w, sp.sublattice.basis.col(j));
    CHECK(ip % 97 == 0);
  }
  // index divides q: det ratio is 1 or q
  Int ratio2 = det_gram(sp.sublattice.basis) / det_gram(b_int.basis);
  CHECK((ratio2 == 1 || ratio2 == Int(97) * 97));

  // determinism: the same stream reproduces w, q, and the basis
  Rng h2 = Rng::stream(17, stage::hyperplane);
  SparsifyResult sp2 = sparsify(b_int, g, a, h2, Int(97));
  CHECK(sp2.w == sp.w);
  CHECK(sp2.q == sp.q);
  CHECK(sp2.sublattice.basis == sp.sublattice.basis);

  // desk counts leave no admissible prime interval without an override
  Rng h3 = Rng::stream(17, stage::hyperplane);
  CHECK_THROWS_AS(sparsify(b_int, g, a, h3, std::nullopt), Error);
  // composite overrides are rejected
  Rng h4 = Rng::stream(17, stage::hyperplane);
  CHECK_THROWS_AS(sparsify(b_int, g, a, h4, Int(91)), Error);
}

TEST_CASE("annoying_check clauses") {
  CHECK(annoying_check(vec({1, 1, 1, 1}), 4).annoying == false);
  CHECK(annoying_check(vec({1, 1, 1, 1}), 4).clause == 1);

  AnnoyingReport a = annoying_check(vec({2, 0, 0, 0, 0, 0, 0, 0}), 8);
  CHECK(a.annoying);

  AnnoyingReport b = annoying_check(vec({4, 0, 0, 0}), 4);
  CHECK(!b.annoying);
  CHECK(b.clause == 2);

  // odd coordinate with few nonzeros stays annoying at d = 4
  CHECK(annoying_check(vec({1, 0, 0, 0}), 4).annoying);
}

TEST_CASE("pipeline YES run produces the good vector") {
  ReductionParams params = ReductionParams::desk(21);
  SetCoverInstance inst = desk_instance(InstanceKind::yes, 21);
  PipelineRun run = run_pipeline(inst, params, Int(2));
  CHECK(run.kind == InstanceKind::yes);
  CHECK(run.certified);
  CHECK(!run.degenerate);
  CHECK(run.witness_norm_sq == 13);  // 4*eta*d + r = 8 + 5
  std::size_t ones = 0;
  for (const Int& c : run.witness) {
    CHECK((c == 0 || c == 1 || c == 2));
    if (c == 1) ++ones;
  }
  CHECK(ones == 5);
  // witness lives in the intermediate lattice
  CHECK(testutil::in_lattice(run.intermediate.basis, run.witness));
  CHECK(run.instance.threshold == 2);
  CHECK(run.instance.gamma_pow == Rat(13, 4));
  CHECK(run.shift_at_full_distance == (run.shift_distance == 5));
  // k = 1: tensor stage is the identity
  CHECK(run.output.basis == run.base.basis);
}

TEST_CASE("pipeline NO run certifies and sparsifies") {
  ReductionParams params = ReductionParams::desk(22);
  SetCoverInstance inst = desk_instance(InstanceKind::no, 22);
  PipelineRun run = run_pipeline(inst, params, Int(2));
  CHECK(run.kind == InstanceKind::no);
  CHECK(run.certified);
  CHECK(!run.degenerate);
  CHECK(run.cert.q == 2);
  CHECK(run.base.rank == run.intermediate.rank);
  for (std::size_t j = 0; j < run.base.rank; ++j) {
    Int ip = dot(run.cert.w, run.base.basis.col(j));
    CHECK(ip % 2 == 0);
  }
  CHECK(run.instance.threshold == 2);
}

TEST_CASE("pipeline run is deterministic in the seed") {
  ReductionParams params = ReductionParams::desk(23);
  SetCoverInstance inst = desk_instance(InstanceKind::yes, 23);
  PipelineRun r1 = run_pipeline(inst, params, Int(2));
  PipelineRun r2 = run_pipeline(inst, params, Int(2));
  CHECK(r1.cert.q == r2.cert.q);
  CHECK(r1.cert.w == r2.cert.w);
  CHECK(r1.cert.s == r2.cert.s);
  CHECK(r1.cert.t == r2.cert.t);
  CHECK(r1.base.basis == r2.base.basis);
  CHECK(r1.output.basis == r2.output.basis);
}

TEST_CASE("pipeline degenerate path emits a stock NO instance") {
  ReductionParams params = ReductionParams::desk(24);
  SetCoverInstance inst;
  inst.universe = 2;
  inst.sets = {{1}};
  inst.d = 4;
  inst.eta = Rat(1, 2);
  PipelineRun run = run_pipeline(inst, params, Int(2));
  CHECK(run.degenerate);
  CHECK(run.kind == InstanceKind::no);
  CHECK(run.certified);
  CHECK(run.output.rank == 1);
  // the stock lattice is honestly NO at the recorded threshold
  CHECK(run.output.basis.at(0, 0) * run.output.basis.at(0, 0) >
        numerator(run.instance.threshold) * numerator(run.instance.threshold));
}

TEST_CASE("pipeline k = 2 tensors the base") {
  ReductionParams params = ReductionParams::desk(25, 2);
  SetCoverInstance inst = desk_instance(InstanceKind::yes, 25);
  PipelineRun run = run_pipeline(inst, params, Int(2));
  CHECK(run.output.rank == run.base.rank * run.base.rank);
  CHECK(run.output.ambient == run.base.ambient * run.base.ambient);
  CHECK(run.instance.threshold == 4);  // d^(k/2) = 4^(2/2)
  CHECK(run.instance.gamma_pow == Rat(169, 16));
}

TEST_CASE("pipeline rejects mismatched parameters") {
  ReductionParams params = ReductionParams::desk(26);
  SetCoverInstance inst = desk_instance(InstanceKind::yes, 26);
  inst.d = 8;  // disagrees with params.d
  CHECK_THROWS_AS(run_pipeline(inst, params, Int(2)), Error);
}
