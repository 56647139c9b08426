#pragma once

// Exact integer and rational linear algebra. Everything is arbitrary
// precision (GMP); there is no machine-word arithmetic on matrix entries.

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace toricfol {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols_if_empty = 0) {
    const std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i].at(j);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Integer lattices

/// U * M * V = D with U, V unimodular and D diagonal, d_k >= 0, d_k | d_{k+1}.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<Integer> invariant_factors() const;
};

/// Pivot rule: smallest nonzero |entry| in the active block, ties broken by
/// lowest (row, col) in row-major order.
SmithForm smith_normal_form(const IntMatrix& m);

/// Lattice basis of {v in Z^cols : M v = 0}, in row Hermite normal form.
std::vector<IntVector> kernel_basis(const IntMatrix& m);

struct Cokernel {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
  IntMatrix projection;          // free_rank x rows; kills the image of M
};

/// Z^rows / M Z^cols.
Cokernel cokernel(const IntMatrix& m);

/// Row Hermite normal form: H = W * M for some unimodular W, pivots positive,
/// entries above a pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

Integer determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);
Integer gcd_of(const IntVector& v);
bool is_primitive(const IntVector& v);

// ---------------------------------------------------------------------------
// Rational linear algebra

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);
std::size_t rank(const RatMatrix& m);
/// Basis of {v : M v = 0}.
std::vector<RatVector> nullspace(const RatMatrix& m);
/// Some solution of M x = b, or nullopt if inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);
std::optional<RatMatrix> inverse(const RatMatrix& m);
Rational determinant(const RatMatrix& m);

/// Incremental rank tracker over Q: feed vectors one at a time and learn
/// whether each one enlarges the span.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t dim) : dim_(dim) {}

  /// Returns true if `v` was independent of the vectors added so far.
  bool add(RatVector v);
  bool contains(RatVector v) const;
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }

 private:
  RatVector reduce(RatVector v) const;

  std::size_t dim_;
  std::vector<RatVector> rows_;       // echelon rows, normalized pivot = 1
  std::vector<std::size_t> pivots_;
};

}  // namespace toricfol
