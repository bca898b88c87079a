#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapamp/exact_linalg.hpp"
#include "test_util.hpp"

using namespace gapamp;
using testutil::make;
using testutil::vec;

TEST_CASE("hnf of identity is identity") {
  HnfResult r = hnf_decompose(IntMatrix::identity(2));
  CHECK(r.H == IntMatrix::identity(2));
  CHECK(r.U == IntMatrix::identity(2));
  CHECK(is_unimodular(r.U));
}

TEST_CASE("hnf reconstructs the input as [H 0]U") {
  Rng rng = Rng::stream(11, stage::suite);
  for (int it = 0; it < 60; ++it) {
    std::size_t rows = 1 + rng.below(4);
    std::size_t cols = 1 + rng.below(4);
    IntMatrix b = testutil::random_matrix(rng, rows, cols, -6, 6);
    HnfResult r = hnf_decompose(b);
    CHECK(is_unimodular(r.U));
    // [H 0] * U == B
    IntMatrix h0(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < r.H.cols; ++j) h0.at(i, j) = r.H.at(i, j);
    }
    CHECK(mul(h0, r.U) == b);
    // V inverts U
    CHECK(mul(r.U, r.V) == IntMatrix::identity(cols));
    if (r.H.cols > 0) CHECK(has_full_column_rank(r.H));
  }
}

TEST_CASE("hnf of (4,0),(2,2) spans the same lattice with |det| 8") {
  IntMatrix b = make(2, 2, {4, 2, 0, 2});
  HnfResult r = hnf_decompose(b);
  REQUIRE(r.H.cols == 2);
  Int det = r.H.at(0, 0) * r.H.at(1, 1) - r.H.at(0, 1) * r.H.at(1, 0);
  CHECK(abs(det) == 8);
  // mutual membership on a coefficient box
  for (long a = -3; a <= 3; ++a) {
    for (long c = -3; c <= 3; ++c) {
      IntVec v(2);
      v[0] = b.at(0, 0) * a + b.at(0, 1) * c;
      v[1] = b.at(1, 0) * a + b.at(1, 1) * c;
      CHECK(testutil::in_lattice(r.H, v));
      IntVec w(2);
      w[0] = r.H.at(0, 0) * a + r.H.at(0, 1) * c;
      w[1] = r.H.at(1, 0) * a + r.H.at(1, 1) * c;
      CHECK(testutil::in_lattice(b, w));
    }
  }
}

TEST_CASE("hnf of a zero column is empty") {
  IntMatrix b(2, 1);
  HnfResult r = hnf_decompose(b);
  CHECK(r.H.cols == 0);
  CHECK(r.H.rows == 2);
  CHECK(r.U == IntMatrix::identity(1));
}

TEST_CASE("hnf canonical form: positive pivots, reduced left entries") {
  Rng rng = Rng::stream(12, stage::suite);
  for (int it = 0; it < 40; ++it) {
    IntMatrix b = testutil::random_matrix(rng, 3, 3, -9, 9);
    HnfResult r = hnf_decompose(b);
    for (std::size_t j = 0; j < r.H.cols; ++j) {
      Int pivot = r.H.at(r.pivot_rows[j], j);
      CHECK(pivot > 0);
      for (std::size_t jj = 0; jj < j; ++jj) {
        Int left = r.H.at(r.pivot_rows[j], jj);
        CHECK(left >= 0);
        CHECK(left < pivot);
      }
    }
  }
}

TEST_CASE("gram examples") {
  CHECK(gram(IntMatrix::identity(3)) == IntMatrix::identity(3));
  IntMatrix b = make(2, 2, {1, 0, 1, 2});
  CHECK(gram(b) == make(2, 2, {2, 2, 2, 4}));
  Rng rng = Rng::stream(13, stage::suite);
  for (int it = 0; it < 20; ++it) {
    IntMatrix m = testutil::random_matrix(rng, 4, 3, -9, 9);
    IntMatrix g = gram(m);
    CHECK(g == transpose(g));
  }
}

TEST_CASE("det_gram examples and unimodular invariance") {
  CHECK(det_gram(IntMatrix::identity(4)) == 1);
  IntMatrix d23 = make(2, 2, {2, 0, 0, 3});
  CHECK(det_gram(d23) == 36);
  Rng rng = Rng::stream(14, stage::suite);
  for (int it = 0; it < 20; ++it) {
    IntMatrix b = testutil::random_full_rank(rng, 3, 3, -5, 5);
    IntMatrix u = testutil::random_unimodular(rng, 3);
    CHECK(det_gram(mul(b, u)) == det_gram(b));
  }
}

TEST_CASE("det_gram rejects rank deficiency") {
  IntMatrix b = make(2, 2, {1, 2, 2, 4});
  CHECK_THROWS_AS(det_gram(b), Error);
}

TEST_CASE("integer_kernel of (1 1)") {
  IntMatrix s = make(1, 2, {1, 1});
  IntMatrix k = integer_kernel(s);
  REQUIRE(k.cols == 1);
  // up to sign, (1,-1)
  CHECK(k.at(0, 0) == -k.at(1, 0));
  CHECK(abs(k.at(0, 0)) == 1);
}

TEST_CASE("integer_kernel of identity is empty") {
  CHECK(integer_kernel(IntMatrix::identity(3)).cols == 0);
}

TEST_CASE("integer_kernel spans all box kernel vectors") {
  Rng rng = Rng::stream(15, stage::suite);
  for (int it = 0; it < 15; ++it) {
    IntMatrix s(2, 4);
    for (Int& e : s.a) e = Int(rng.below(2));
    IntMatrix k = integer_kernel(s);
    CHECK(mul(s, k) == IntMatrix(2, k.cols));
    if (k.cols > 0) CHECK(has_full_column_rank(k));
    // every kernel vector in the [-3,3]^4 box lies in the span
    std::vector<long> x(4, -3);
    while (true) {
      IntVec v = vec({x[0], x[1], x[2], x[3]});
      IntVec sv = mul_vec(s, v);
      if (is_zero(sv)) CHECK(testutil::in_lattice(k, v));
      std::size_t i = 0;
      while (i < 4 && x[i] == 3) x[i++] = -3;
      if (i == 4) break;
      ++x[i];
    }
  }
}

TEST_CASE("solve_diophantine examples") {
  IntMatrix id2 = IntMatrix::identity(2);
  auto t = solve_diophantine(id2, vec({-1, -1}));
  REQUIRE(t.has_value());
  CHECK((*t)[0] == -1);
  CHECK((*t)[1] == -1);

  IntMatrix s2 = make(1, 1, {2});
  CHECK(!solve_diophantine(s2, vec({1})).has_value());

  IntMatrix s23 = make(1, 2, {2, 3});
  auto t2 = solve_diophantine(s23, vec({1}));
  REQUIRE(t2.has_value());
  CHECK(mul_vec(s23, *t2) == vec({1}));
}

TEST_CASE("solve_diophantine randomized round trip") {
  Rng rng = Rng::stream(16, stage::suite);
  for (int it = 0; it < 40; ++it) {
    std::size_t rows = 1 + rng.below(3);
    std::size_t cols = 1 + rng.below(4);
    IntMatrix s = testutil::random_matrix(rng, rows, cols, -4, 4);
    IntVec x(cols);
    for (Int& e : x) e = Int(rng.range(-3, 3));
    IntVec b = mul_vec(s, x);
    auto t = solve_diophantine(s, b);
    REQUIRE(t.has_value());
    CHECK(mul_vec(s, *t) == b);
  }
}

TEST_CASE("rational_inverse examples") {
  RatMatrix inv = rational_inverse(IntMatrix::identity(3));
  CHECK(inv == RatMatrix::identity(3));
  IntMatrix d = make(2, 2, {2, 0, 0, 4});
  RatMatrix di = rational_inverse(d);
  CHECK(di.at(0, 0) == Rat(1, 2));
  CHECK(di.at(1, 1) == Rat(1, 4));
  CHECK(di.at(0, 1) == 0);
  Rng rng = Rng::stream(17, stage::suite);
  for (int it = 0; it < 10; ++it) {
    IntMatrix u = testutil::random_unimodular(rng, 3);
    RatMatrix ui = rational_inverse(u);
    for (const Rat& e : ui.a) CHECK(denominator(e) == 1);
    CHECK(mul(RatMatrix::from_int(u), ui) == RatMatrix::identity(3));
  }
}

TEST_CASE("rational_inverse rejects singular input") {
  IntMatrix b = make(2, 2, {1, 1, 1, 1});
  CHECK_THROWS_AS(rational_inverse(b), Error);
}

TEST_CASE("bareiss determinant matches cofactor expansion on 3x3") {
  Rng rng = Rng::stream(18, stage::suite);
  for (int it = 0; it < 40; ++it) {
    IntMatrix b = testutil::random_matrix(rng, 3, 3, -9, 9);
    Int det = bareiss_det(b);
    Int ref = b.at(0, 0) * (b.at(1, 1) * b.at(2, 2) - b.at(1, 2) * b.at(2, 1)) -
              b.at(0, 1) * (b.at(1, 0) * b.at(2, 2) - b.at(1, 2) * b.at(2, 0)) +
              b.at(0, 2) * (b.at(1, 0) * b.at(2, 1) - b.at(1, 1) * b.at(2, 0));
    CHECK(det == ref);
  }
}
