#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapamp/lattice.hpp"
#include "test_util.hpp"

using namespace gapamp;
using testutil::make;
using testutil::vec;

TEST_CASE("lattice construction validates column rank") {
  CHECK_THROWS_AS(Lattice::from_basis(make(2, 2, {1, 2, 2, 4})), Error);
  Lattice l = Lattice::from_basis(make(2, 1, {1, 2}));
  CHECK(l.ambient == 2);
  CHECK(l.rank == 1);
  Lattice zero = Lattice::from_basis(IntMatrix(3, 0));
  CHECK(zero.rank == 0);
}

TEST_CASE("tensor of identities is identity") {
  Lattice z2 = Lattice::from_basis(IntMatrix::identity(2));
  Lattice t = tensor(z2, z2);
  CHECK(t.ambient == 4);
  CHECK(t.rank == 4);
  CHECK(t.basis == IntMatrix::identity(4));
}

TEST_CASE("tensor of scaled lines multiplies the scale") {
  Lattice a = Lattice::from_basis(make(1, 1, {2}));
  Lattice b = Lattice::from_basis(make(1, 1, {3}));
  Lattice t = tensor(a, b);
  CHECK(t.basis == make(1, 1, {6}));
}

TEST_CASE("tensor membership characterization both directions") {
  Rng rng = Rng::stream(21, stage::suite);
  for (int it = 0; it < 20; ++it) {
    IntMatrix b1 = testutil::random_full_rank(rng, 2, 2, -3, 3);
    IntMatrix b2 = testutil::random_full_rank(rng, 2, 2, -3, 3);
    Lattice t = tensor(Lattice::from_basis(b1), Lattice::from_basis(b2));
    // random X: B1 X B2^T reshapes into the tensor lattice
    IntMatrix x = testutil::random_matrix(rng, 2, 2, -3, 3);
    IntMatrix v = mul(mul(b1, x), transpose(b2));
    TensorVector tv = TensorVector::from_matrix(v);
    CHECK(testutil::in_lattice(t.basis, tv.v));
    // every tensor basis column reshapes to B1 Eij B2^T
    for (std::size_t j1 = 0; j1 < 2; ++j1) {
      for (std::size_t j2 = 0; j2 < 2; ++j2) {
        IntMatrix e(2, 2);
        e.at(j1, j2) = 1;
        IntMatrix w = mul(mul(b1, e), transpose(b2));
        CHECK(TensorVector::from_matrix(w).v == t.basis.col(j1 * 2 + j2));
      }
    }
  }
}

TEST_CASE("tensor norm multiplicativity for p in {1,2,3,inf}") {
  Rng rng = Rng::stream(22, stage::suite);
  for (int it = 0; it < 50; ++it) {
    std::size_t n1 = 1 + rng.below(3);
    std::size_t n2 = 1 + rng.below(3);
    IntVec v1(n1), v2(n2);
    for (Int& e : v1) e = Int(rng.range(-6, 6));
    for (Int& e : v2) e = Int(rng.range(-6, 6));
    IntVec t(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) t[i * n2 + j] = v1[i] * v2[j];
    }
    for (unsigned p = 1; p <= 3; ++p) {
      CHECK(lp_norm_pow(t, p) == lp_norm_pow(v1, p) * lp_norm_pow(v2, p));
    }
    CHECK(linf_norm(t) == linf_norm(v1) * linf_norm(v2));
  }
}

TEST_CASE("tensor_power examples") {
  Lattice two = Lattice::from_basis(make(1, 1, {2}));
  Lattice t3 = tensor_power(two, 3, 24);
  CHECK(t3.basis == make(1, 1, {8}));
  Lattice z2 = Lattice::from_basis(IntMatrix::identity(2));
  Lattice same = tensor_power(z2, 1, 24);
  CHECK(same.basis == z2.basis);
  Lattice sq = tensor_power(z2, 2, 24);
  CHECK(sq.rank == 4);
}

TEST_CASE("tensor_power enforces the rank ceiling") {
  Lattice z3 = Lattice::from_basis(IntMatrix::identity(3));
  CHECK_THROWS_AS(tensor_power(z3, 3, 24), Error);
  CHECK(tensor_power(z3, 3, 0).rank == 27);  // 0 disables the guard
}

TEST_CASE("dual basis examples") {
  Lattice zn = Lattice::from_basis(IntMatrix::identity(3));
  CHECK(dual_basis(zn) == RatMatrix::identity(3));
  Lattice d = Lattice::from_basis(make(2, 2, {2, 0, 0, 4}));
  RatMatrix db = dual_basis(d);
  CHECK(db.at(0, 0) == Rat(1, 2));
  CHECK(db.at(1, 1) == Rat(1, 4));
}

TEST_CASE("dual basis has integer inner products with primal") {
  Rng rng = Rng::stream(23, stage::suite);
  for (int it = 0; it < 10; ++it) {
    IntMatrix b = testutil::random_full_rank(rng, 3, 3, -4, 4);
    Lattice l = Lattice::from_basis(b);
    RatMatrix db = dual_basis(l);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        Rat ip = 0;
        for (std::size_t k = 0; k < 3; ++k) ip += db.at(k, i) * Rat(b.at(k, j));
        CHECK(denominator(ip) == 1);
      }
    }
  }
}

TEST_CASE("dual rejects non-square lattices") {
  Lattice l = Lattice::from_basis(make(2, 1, {1, 0}));
  CHECK_THROWS_AS(dual_basis(l), Error);
}

TEST_CASE("identity tensor witness norm equals dimension") {
  Lattice five = Lattice::from_basis(make(1, 1, {5}));
  TensorVector w1 = identity_tensor_witness(five);
  CHECK(w1.norm_sq() == 1);
  CHECK(w1.v == vec({1}));

  Lattice z3 = Lattice::from_basis(IntMatrix::identity(3));
  TensorVector w3 = identity_tensor_witness(z3);
  CHECK(w3.norm_sq() == 3);
  CHECK(w3.matrix_view() == IntMatrix::identity(3));

  Rng rng = Rng::stream(24, stage::suite);
  for (int it = 0; it < 10; ++it) {
    IntMatrix b = testutil::random_full_rank(rng, 4, 4, -4, 4);
    TensorVector w = identity_tensor_witness(Lattice::from_basis(b));
    CHECK(w.matrix_view() == IntMatrix::identity(4));
    CHECK(w.norm_sq() == 4);
  }
}

TEST_CASE("congruence sublattice examples") {
  Lattice z2 = Lattice::from_basis(IntMatrix::identity(2));
  Lattice h = congruence_sublattice(z2, vec({1, 0}), Int(2));
  CHECK(h.rank == 2);
  CHECK(det_gram(h.basis) == 4);
  // brute-force membership over the box [-4,4]^2
  for (long a = -4; a <= 4; ++a) {
    for (long b = -4; b <= 4; ++b) {
      bool congruent = ((a % 2) + 2) % 2 == 0;
      CHECK(testutil::in_lattice(h.basis, vec({a, b})) == congruent);
    }
  }

  Lattice z1 = Lattice::from_basis(IntMatrix::identity(1));
  Lattice f = congruence_sublattice(z1, vec({1}), Int(5));
  CHECK(det_gram(f.basis) == 25);

  // w = 0 mod q keeps the lattice, up to unimodular equivalence
  Lattice same = congruence_sublattice(z2, vec({2, 4}), Int(2));
  CHECK(same.rank == 2);
  CHECK(det_gram(same.basis) == 1);
}

TEST_CASE("congruence sublattice index divides q") {
  Rng rng = Rng::stream(25, stage::suite);
  for (int it = 0; it < 20; ++it) {
    IntMatrix b = testutil::random_full_rank(rng, 3, 3, -3, 3);
    Lattice l = Lattice::from_basis(b);
    Int q(2 + rng.below(5));
    IntVec w(3);
    for (Int& e : w) e = Int(rng.below(7));
    Lattice sub = congruence_sublattice(l, w, q);
    CHECK(sub.rank == 3);
    Int dg = det_gram(sub.basis);
    Int base = det_gram(b);
    // index^2 = det ratio; index divides q
    Int ratio = dg / base;
    CHECK(ratio * base == dg);
    bool all_zero = true;
    for (std::size_t j = 0; j < 3; ++j) {
      Int c = 0;
      for (std::size_t i = 0; i < 3; ++i) c += w[i] * b.at(i, j);
      if (c % q != 0) all_zero = false;
    }
    if (all_zero) {
      CHECK(ratio == 1);
    } else {
      CHECK(ratio == q * q);
    }
    // every output basis vector satisfies the congruence
    for (std::size_t j = 0; j < sub.rank; ++j) {
      CHECK(dot(w, sub.basis.col(j)) % q == 0);
    }
  }
}

TEST_CASE("lp norm examples") {
  CHECK(lp_norm_pow(vec({3, 4}), 2) == 25);
  CHECK(linf_norm(vec({1, -2, 0})) == 2);
  CHECK(lp_norm_pow(vec({1, 1, 1}), 1) == 3);
}

TEST_CASE("reshape identity: vector norm equals trace of W W^T") {
  Rng rng = Rng::stream(26, stage::suite);
  for (int it = 0; it < 1000; ++it) {
    std::size_t n1 = 1 + rng.below(4);
    std::size_t n2 = 1 + rng.below(4);
    IntMatrix w = testutil::random_matrix(rng, n1, n2, -9, 9);
    TensorVector tv = TensorVector::from_matrix(w);
    IntMatrix wwt = mul(w, transpose(w));
    Int tr = 0;
    for (std::size_t i = 0; i < n1; ++i) tr += wwt.at(i, i);
    CHECK(tv.norm_sq() == tr);
    CHECK(tv.matrix_view() == w);
    TensorVector back = TensorVector::from_vector(n1, n2, tv.v);
    CHECK(back.matrix_view() == w);
  }
}
