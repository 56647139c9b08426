#include "toricfol/lattice.hpp"

#include <algorithm>
#include <utility>

namespace toricfol {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst += k * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

}  // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t k = 0; k < rank; ++k) out.push_back(D(k, k));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows();
  const std::size_t C = m.cols();
  IntMatrix A = m;
  IntMatrix U = IntMatrix::identity(R);
  IntMatrix V = IntMatrix::identity(C);
  std::size_t t = 0;

  for (; t < std::min(R, C); ++t) {
    while (true) {
      // pivot: smallest nonzero |a_ij| in the active block
      bool found = false;
      std::size_t pr = 0, pc = 0;
      Integer best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          if (A(i, j) == 0) continue;
          Integer a = abs(A(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (!found) goto done;
      swap_rows(A, t, pr);
      swap_rows(U, t, pr);
      swap_cols(A, t, pc);
      swap_cols(V, t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (A(i, t) == 0) continue;
        Integer q = floor_div(A(i, t), A(t, t));
        add_row(A, i, t, -q);
        add_row(U, i, t, -q);
        if (A(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (A(t, j) == 0) continue;
        Integer q = floor_div(A(t, j), A(t, t));
        add_col(A, j, t, -q);
        add_col(V, j, t, -q);
        if (A(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // divisibility of the remaining block by the pivot
      bool fixed = false;
      for (std::size_t i = t + 1; i < R && !fixed; ++i)
        for (std::size_t j = t + 1; j < C; ++j) {
          Integer r;
          mpz_fdiv_r(r.get_mpz_t(), A(i, j).get_mpz_t(), A(t, t).get_mpz_t());
          if (r != 0) {
            add_row(A, t, i, 1);
            add_row(U, t, i, 1);
            fixed = true;
            break;
          }
        }
      if (fixed) continue;
      break;
    }
    if (A(t, t) < 0) {
      for (std::size_t j = 0; j < C; ++j) A(t, j) = -A(t, j);
      for (std::size_t j = 0; j < R; ++j) U(t, j) = -U(t, j);
    }
  }
done:
  SmithForm out;
  out.rank = 0;
  for (std::size_t k = 0; k < std::min(R, C); ++k)
    if (A(k, k) != 0) ++out.rank;
  out.U = std::move(U);
  out.D = std::move(A);
  out.V = std::move(V);
  return out;
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  const std::size_t C = m.cols();
  if (s.rank == C) return {};
  IntMatrix basis(C - s.rank, C);
  for (std::size_t k = s.rank; k < C; ++k)
    for (std::size_t i = 0; i < C; ++i) basis(k - s.rank, i) = s.V(i, k);
  IntMatrix h = hermite_normal_form(basis);
  std::vector<IntVector> out;
  for (std::size_t r = 0; r < h.rows(); ++r) out.push_back(h.row(r));
  return out;
}

Cokernel cokernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  Cokernel out;
  const std::size_t R = m.rows();
  for (std::size_t k = 0; k < s.rank; ++k)
    if (s.D(k, k) != 1) out.torsion.push_back(s.D(k, k));
  out.free_rank = R - s.rank;
  out.projection = IntMatrix(out.free_rank, R);
  for (std::size_t k = s.rank; k < R; ++k)
    for (std::size_t j = 0; j < R; ++j) out.projection(k - s.rank, j) = s.U(k, j);
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix A = m;
  const std::size_t R = A.rows();
  const std::size_t C = A.cols();
  std::size_t prow = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < C && prow < R; ++c) {
    // Euclid on column c among rows prow..R-1
    while (true) {
      std::size_t best = R;
      for (std::size_t i = prow; i < R; ++i)
        if (A(i, c) != 0 && (best == R || abs(A(i, c)) < abs(A(best, c)))) best = i;
      if (best == R) break;
      swap_rows(A, prow, best);
      bool done = true;
      for (std::size_t i = prow + 1; i < R; ++i) {
        if (A(i, c) == 0) continue;
        Integer q = floor_div(A(i, c), A(prow, c));
        add_row(A, i, prow, -q);
        if (A(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (A(prow, c) == 0) continue;
    if (A(prow, c) < 0)
      for (std::size_t j = 0; j < C; ++j) A(prow, j) = -A(prow, j);
    for (std::size_t i = 0; i < prow; ++i) {
      Integer q = floor_div(A(i, c), A(prow, c));
      add_row(A, i, prow, -q);
    }
    pivot_cols.push_back(c);
    ++prow;
  }
  IntMatrix out(prow, C);
  for (std::size_t i = 0; i < prow; ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = A(i, j);
  return out;
}

Integer determinant(const IntMatrix& m) {
  // Bareiss fraction-free elimination
  const std::size_t n = m.rows();
  if (n != m.cols()) return 0;
  if (n == 0) return 1;
  IntMatrix A = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(A, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        A(i, j) = v;
      }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  RatMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) return std::nullopt;
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

Rational determinant(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) return 0;
  RatMatrix a = m;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

RatVector SpanBuilder::reduce(RatVector v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t p = pivots_[k];
    if (v[p] == 0) continue;
    Rational f = v[p];
    const auto& row = rows_[k];
    for (std::size_t j = p; j < dim_; ++j)
      if (row[j] != 0) v[j] -= f * row[j];
  }
  return v;
}

bool SpanBuilder::add(RatVector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p] == 0) ++p;
  if (p == dim_) return false;
  Rational inv = 1 / v[p];
  for (std::size_t j = p; j < dim_; ++j) v[j] *= inv;
  // keep earlier rows reduced at the new pivot so reduce() stays one pass
  for (auto& row : rows_) {
    if (row[p] == 0) continue;
    Rational f = row[p];
    for (std::size_t j = p; j < dim_; ++j) row[j] -= f * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool SpanBuilder::contains(RatVector v) const {
  v = reduce(std::move(v));
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace toricfol
