#include <random>

#include "doctest.h"
#include "toricfol/lattice.hpp"

using namespace toricfol;

namespace {

IntMatrix M(std::vector<std::vector<long>> rows, std::size_t cols_if_empty = 0) {
  std::vector<IntVector> r;
  for (auto& row : rows) {
    IntVector v;
    for (auto x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return IntMatrix::from_rows(r, cols_if_empty);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

void check_smith(const IntMatrix& m) {
  SmithForm f = smith_normal_form(m);
  CHECK(f.U * m * f.V == f.D);
  CHECK(abs(determinant(f.U)) == 1);
  CHECK(abs(determinant(f.V)) == 1);
  for (std::size_t i = 0; i < f.D.rows(); ++i)
    for (std::size_t j = 0; j < f.D.cols(); ++j)
      if (i != j) CHECK(f.D(i, j) == 0);
  auto inv = f.invariant_factors();
  CHECK(inv.size() == f.rank);
  for (std::size_t k = 0; k < inv.size(); ++k) {
    CHECK(inv[k] > 0);
    if (k + 1 < inv.size()) CHECK(inv[k + 1] % inv[k] == 0);
  }
  CHECK(f.rank == rank(m));
}

}  // namespace

TEST_CASE("smith normal form of small matrices") {
  SmithForm id = smith_normal_form(IntMatrix::identity(2));
  CHECK(id.D == IntMatrix::identity(2));
  CHECK(id.U == IntMatrix::identity(2));
  CHECK(id.V == IntMatrix::identity(2));

  SmithForm d = smith_normal_form(M({{2, 0}, {0, 3}}));
  CHECK(d.D == M({{1, 0}, {0, 6}}));
  check_smith(M({{2, 0}, {0, 3}}));

  SmithForm z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.D.is_zero());
  CHECK(z.rank == 0);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<int> dim(1, 5);
    check_smith(random_matrix(rng, dim(rng), dim(rng), 6));
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(IntMatrix::identity(3)).empty());
  auto k1 = kernel_basis(M({{1, -1}}));
  REQUIRE(k1.size() == 1);
  CHECK(k1[0] == IntVector{1, 1});
  auto k2 = kernel_basis(M({{2, -4}}));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == IntVector{2, 1});

  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m = random_matrix(rng, 2, 4, 4);
    auto basis = kernel_basis(m);
    CHECK(basis.size() + rank(m) == 4);
    for (const auto& v : basis) {
      auto mv = m.apply(v);
      for (const auto& x : mv) CHECK(x == 0);
    }
    if (!basis.empty()) {
      // a saturated lattice: the basis matrix has all invariant factors 1
      IntMatrix b = IntMatrix::from_rows(basis);
      for (const auto& d : smith_normal_form(b).invariant_factors()) CHECK(d == 1);
    }
  }
}

TEST_CASE("cokernel") {
  // pairing matrix of the fan of P2: rays e1, e2, -e1-e2
  Cokernel c = cokernel(M({{1, 0}, {0, 1}, {-1, -1}}));
  CHECK(c.free_rank == 1);
  CHECK(c.torsion.empty());
  IntVector row = c.projection.row(0);
  CHECK((row == IntVector{1, 1, 1} || row == IntVector{-1, -1, -1}));

  Cokernel u = cokernel(M({{2, 1}, {1, 1}}));
  CHECK(u.free_rank == 0);
  CHECK(u.torsion.empty());

  // Hirzebruch: rays e1, e2, -e2, -e1 + 2 e2
  Cokernel h = cokernel(M({{1, 0}, {0, 1}, {0, -1}, {-1, 2}}));
  CHECK(h.free_rank == 2);
  CHECK(h.torsion.empty());
  CHECK((h.projection * M({{1, 0}, {0, 1}, {0, -1}, {-1, 2}})).is_zero());

  Cokernel t = cokernel(M({{2}}));
  CHECK(t.free_rank == 0);
  CHECK(t.torsion == std::vector<Integer>{2});

  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    IntMatrix m = random_matrix(rng, 4, 2, 3);
    Cokernel ck = cokernel(m);
    CHECK(ck.free_rank + rank(m) == 4);
    CHECK((ck.projection * m).is_zero());
  }
}

TEST_CASE("hermite normal form, determinant, rank") {
  IntMatrix h = hermite_normal_form(M({{2, 4}, {1, 3}}));
  CHECK(h == M({{1, 1}, {0, 2}}));
  CHECK(determinant(M({{2, 4}, {1, 3}})) == 2);
  CHECK(determinant(M({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
  CHECK(rank(M({{1, 2}, {2, 4}})) == 1);
  CHECK(is_primitive({2, 3}));
  CHECK_FALSE(is_primitive({2, 4}));
  CHECK(gcd_of({6, -9, 12}) == 3);
}

TEST_CASE("rational linear algebra") {
  RatMatrix a = to_rational(M({{1, 2}, {3, 4}}));
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(a * *inv == RatMatrix::identity(2));
  CHECK(determinant(a) == -2);
  CHECK_FALSE(inverse(to_rational(M({{1, 2}, {2, 4}}))));
  auto x = solve(a, {Rational(1), Rational(1)});
  REQUIRE(x);
  CHECK(a.apply(*x) == RatVector{1, 1});
  CHECK_FALSE(solve(to_rational(M({{1, 1}, {1, 1}})), {Rational(0), Rational(1)}));
  auto ns = nullspace(to_rational(M({{1, 1, 1}})));
  CHECK(ns.size() == 2);

  SpanBuilder sb(3);
  CHECK(sb.add({1, 0, 0}));
  CHECK(sb.add({1, 1, 0}));
  CHECK_FALSE(sb.add({2, 3, 0}));
  CHECK(sb.contains({0, 5, 0}));
  CHECK_FALSE(sb.contains({0, 0, 1}));
  CHECK(sb.rank() == 2);
}
