#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapamp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Contract violations carry a kind so the CLI can map them to exit codes.
enum class ErrorKind { parameter, resource, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_param(const std::string& msg) { throw Error(ErrorKind::parameter, msg); }
[[noreturn]] inline void fail_resource(const std::string& msg) { throw Error(ErrorKind::resource, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrorKind::internal, msg); }

// Dense arbitrary-precision integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  IntVec col(std::size_t j) const {
    IntVec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }

  void set_col(std::size_t j, const IntVec& v) {
    for (std::size_t i = 0; i < rows; ++i) at(i, j) = v[i];
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
  }

  void negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) at(r, j) = -at(r, j);
  }

  // col_dst += lambda * col_src
  void addmul_col(std::size_t dst, std::size_t src, const Int& lambda) {
    for (std::size_t r = 0; r < rows; ++r) at(r, dst) += lambda * at(r, src);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols; ++c) at(i, c) = -at(i, c);
  }

  // row_dst += lambda * row_src
  void addmul_row(std::size_t dst, std::size_t src, const Int& lambda) {
    for (std::size_t c = 0; c < cols; ++c) at(dst, c) += lambda * at(src, c);
  }
};

inline IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

inline IntMatrix mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) fail_internal("matrix product shape mismatch");
  IntMatrix z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Int& xi = x.at(i, k);
      if (xi == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += xi * y.at(k, j);
    }
  return z;
}

inline IntVec mul_vec(const IntMatrix& m, const IntVec& x) {
  if (m.cols != x.size()) fail_internal("matrix-vector shape mismatch");
  IntVec y(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) y[i] += m.at(i, j) * x[j];
  return y;
}

// Kronecker product: (a (x) b)[i1*br+i2][j1*bc+j2] = a[i1][j1] * b[i2][j2].
inline IntMatrix kron(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix z(x.rows * y.rows, x.cols * y.cols);
  for (std::size_t i1 = 0; i1 < x.rows; ++i1)
    for (std::size_t j1 = 0; j1 < x.cols; ++j1) {
      const Int& v = x.at(i1, j1);
      if (v == 0) continue;
      for (std::size_t i2 = 0; i2 < y.rows; ++i2)
        for (std::size_t j2 = 0; j2 < y.cols; ++j2)
          z.at(i1 * y.rows + i2, j1 * y.cols + j2) = v * y.at(i2, j2);
    }
  return z;
}

// Dense rational matrix; used for inverses and dual bases only.
struct RatMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rat> a;

  RatMatrix() = default;
  RatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Rat& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static RatMatrix from_int(const IntMatrix& m) {
    RatMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i];
    return r;
  }

  bool operator==(const RatMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline RatMatrix mul(const RatMatrix& x, const RatMatrix& y) {
  if (x.cols != y.rows) fail_internal("matrix product shape mismatch");
  RatMatrix z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Rat& xi = x.at(i, k);
      if (xi == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += xi * y.at(k, j);
    }
  return z;
}

inline RatMatrix transpose(const RatMatrix& m) {
  RatMatrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

inline Int dot(const IntVec& x, const IntVec& y) {
  if (x.size() != y.size()) fail_internal("dot shape mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Int norm_sq(const IntVec& x) { return dot(x, x); }

inline bool is_zero(const IntVec& x) {
  for (const Int& v : x)
    if (v != 0) return false;
  return true;
}

}  // namespace gapamp
