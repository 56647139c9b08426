#include <algorithm>
#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "testing.hpp"
#include "toricfol/ideals.hpp"
#include "toricfol/text.hpp"

using namespace toricfol;
using testing::Rng;

namespace {

Polynomial P(const char* s, std::size_t n) { return parse_polynomial(s, n); }

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order) {
  Exponents a = leading_exponents(f, order), b = leading_exponents(g, order), l(a.size()), sa(a.size()), sb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    l[i] = std::max(a[i], b[i]);
    sa[i] = l[i] - a[i];
    sb[i] = l[i] - b[i];
  }
  return f.shift(sa) * (Rational(1) / f.coefficient(a)) - g.shift(sb) * (Rational(1) / g.coefficient(b));
}

void check_reduced_basis(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& gb, MonomialOrder order) {
  for (const auto& g : gens) CHECK(reduce(g, gb, order).is_zero());
  for (std::size_t i = 0; i < gb.size(); ++i) {
    CHECK(gb[i].coefficient(leading_exponents(gb[i], order)) == 1);
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (i == j) continue;
      Exponents lj = leading_exponents(gb[j], order);
      for (const auto& [e, c] : gb[i].terms()) {
        bool divisible = true;
        for (std::size_t k = 0; k < e.size(); ++k) divisible = divisible && lj[k] <= e[k];
        CHECK_FALSE(divisible);
      }
      if (j > i) CHECK(reduce(s_polynomial(gb[i], gb[j], order), gb, order).is_zero());
    }
  }
}

}  // namespace

TEST_CASE("groebner bases of small ideals") {
  CHECK(groebner_basis({P("x1", 3)}) == std::vector<Polynomial>{P("x1", 3)});
  auto gb = groebner_basis({P("x2^2", 3), P("x2*x3", 3)});
  CHECK(gb.size() == 2);
  CHECK(std::find(gb.begin(), gb.end(), P("x2^2", 3)) != gb.end());
  CHECK(std::find(gb.begin(), gb.end(), P("x2*x3", 3)) != gb.end());
  auto lex = groebner_basis({P("x1 - x2^2", 2), P("x2 - x1^2", 2)}, MonomialOrder::Lex);
  CHECK(std::find(lex.begin(), lex.end(), P("x2^4 - x2", 2)) != lex.end());
  check_reduced_basis({P("x1 - x2^2", 2), P("x2 - x1^2", 2)}, lex, MonomialOrder::Lex);
  CHECK(groebner_basis({P("x1", 2), P("x1 + 1", 2)}) == std::vector<Polynomial>{P("1", 2)});
  CHECK(groebner_basis({Polynomial(2)}).empty());
}

TEST_CASE("groebner bases of random ideals are reduced and deterministic") {
  Rng rng(41);
  for (int t = 0; t < 25; ++t) {
    CAPTURE(t);
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(testing::random_polynomial(rng, 3, 2, 0.3));
    for (auto order : {MonomialOrder::DegRevLex, MonomialOrder::Lex}) {
      auto gb = groebner_basis(gens, order);
      check_reduced_basis(gens, gb, order);
      CHECK(groebner_basis(gens, order) == gb);
      auto rev = gens;
      std::reverse(rev.begin(), rev.end());
      CHECK(groebner_basis(rev, order) == gb);  // reduced bases are unique
    }
    // the dimension does not depend on the order used
    std::vector<Exponents> lead;
    for (const auto& g : groebner_basis(gens, MonomialOrder::Lex)) lead.push_back(leading_exponents(g, MonomialOrder::Lex));
    CHECK(monomial_ideal_dimension(3, lead) == Ideal(3, gens).dimension());
  }
}

TEST_CASE("dimension examples") {
  CHECK(Ideal(3, {P("x1", 3), P("x2", 3)}).dimension() == 1);
  CHECK(Ideal(3, {P("x2^2", 3), P("x2*x3", 3)}).dimension() == 2);
  CHECK(Ideal(3).dimension() == 3);
  CHECK(Ideal(3, {P("1", 3)}).dimension() == -1);
  CHECK(Ideal(3, {P("x1^2 + x2^2 + x3^2", 3)}).dimension() == 2);
  CHECK(Ideal(2, {P("x1 - x2^2", 2), P("x2 - x1^2", 2)}).dimension() == 0);
}

TEST_CASE("dimension of random monomial ideals matches the hitting-set count") {
  Rng rng(43);
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<std::size_t> nv(1, 6), ng(1, 5);
    std::uniform_int_distribution<std::uint32_t> ex(0, 2);
    const std::size_t n = nv(rng);
    std::vector<Exponents> gens;
    std::vector<Polynomial> polys;
    for (std::size_t k = ng(rng); k > 0; --k) {
      Exponents e(n);
      for (auto& x : e) x = ex(rng) == 2 ? ex(rng) : 0;
      gens.push_back(e);
      polys.push_back(Polynomial::monomial(e));
    }
    CAPTURE(t);
    const int expect = brute::hitting_set_dimension(n, gens);
    CHECK(Ideal(n, polys).dimension() == expect);
    std::shuffle(polys.begin(), polys.end(), rng);
    CHECK(Ideal(n, polys).dimension() == expect);
  }
}

TEST_CASE("dimension outside the irrelevant locus") {
  for (std::size_t n = 2; n <= 4; ++n) {
    Fan bl = blowup_projective_space(n);
    const std::size_t N = n + 2;
    auto pc = primitive_collections(bl);
    Ideal inside(N, {Polynomial::variable(N, n), Polynomial::variable(N, n + 1)});
    CHECK(dimension_outside_irrelevant(inside, pc) == -1);
    CHECK(dimension_outside_irrelevant(Ideal(N), pc) == static_cast<int>(N));
    CHECK_FALSE(codim_in_variety(inside, bl));
  }
  Fan p2 = projective_space(2);
  Ideal minors(3, {P("x1*x3", 3), P("x2*x3", 3), P("x1^2 + x2^2", 3)});
  CHECK(dimension_outside_irrelevant(minors, primitive_collections(p2)) == 1);
  CHECK(codim_in_variety(minors, p2) == std::optional<std::size_t>(2));
  // the cone point alone is removed
  CHECK(dimension_outside_irrelevant(Ideal(3, {P("x1", 3), P("x2", 3), P("x3", 3)}), primitive_collections(p2)) == -1);
  // a component inside Z together with one outside it, of lower dimension
  Fan bl = blowup_projective_space(2);
  Ideal mixed(4, {P("x3*x1", 4), P("x3*x2", 4), P("x4*x1", 4), P("x4*x2", 4), P("x1 - x2", 4)});
  // V = {x1 = x2 = 0} (in Z) union {x3 = x4 = 0, x1 = x2} (in Z)
  CHECK(dimension_outside_irrelevant(mixed, primitive_collections(bl)) == -1);
  Ideal line(4, {P("x1 - x2", 4), P("x3", 4)});
  CHECK(dimension_outside_irrelevant(line, primitive_collections(bl)) == 2);
  CHECK(codim_in_variety(line, bl) == std::optional<std::size_t>(2));
}
