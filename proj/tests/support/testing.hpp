#pragma once

// Shared helpers for the test binaries: seeded random generators for exact
// objects and a small catalog of fans.

#include <random>
#include <string>
#include <vector>

#include "toricfol/fan.hpp"
#include "toricfol/forms.hpp"
#include "toricfol/picard.hpp"
#include "toricfol/polynomial.hpp"

namespace toricfol::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int range = 5, int den = 3) {
  std::uniform_int_distribution<int> num(-range, range), d(1, den);
  Rational r(num(rng), d(rng));
  r.canonicalize();
  return r;
}

inline Rational random_nonzero_rational(Rng& rng, int range = 5, int den = 3) {
  for (;;) {
    Rational r = random_rational(rng, range, den);
    if (r != 0) return r;
  }
}

/// Dense random polynomial of total degree <= deg in nvars variables.
inline Polynomial random_polynomial(Rng& rng, std::size_t nvars, unsigned deg, double density = 0.5) {
  Polynomial p(nvars);
  std::bernoulli_distribution keep(density);
  Exponents e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == nvars) {
      if (keep(rng)) p.add_term(e, random_rational(rng));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, deg);
  return p;
}

/// Random element of the graded piece of degree alpha (possibly zero).
inline Polynomial random_homogeneous(Rng& rng, const DegreeData& dd, const MultiDegree& alpha) {
  Polynomial p(dd.nvars());
  for (const auto& e : graded_piece_basis(dd, alpha)) p.add_term(e, random_rational(rng));
  return p;
}

/// Random homogeneous field of degree alpha; retried until nonzero when the
/// pieces allow it.
inline VectorField random_field(Rng& rng, const DegreeData& dd, const MultiDegree& alpha) {
  for (int attempt = 0;; ++attempt) {
    std::vector<Polynomial> c;
    for (std::size_t j = 0; j < dd.nvars(); ++j) c.push_back(random_homogeneous(rng, dd, alpha + dd.var_degree(j)));
    VectorField y(c);
    if (!y.is_zero() || attempt > 20) return VectorField::graded(dd, std::move(c), alpha);
  }
}

inline VectorField random_ungraded_field(Rng& rng, std::size_t nvars, unsigned deg) {
  std::vector<Polynomial> c;
  for (std::size_t j = 0; j < nvars; ++j) c.push_back(random_polynomial(rng, nvars, deg));
  return VectorField(std::move(c));
}

inline DiffForm random_form(Rng& rng, std::size_t nvars, std::size_t q, unsigned deg) {
  DiffForm w(nvars, q);
  Indices idx(q);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == q) {
      w.add_term(idx, random_polynomial(rng, nvars, deg, 0.3));
      return;
    }
    for (std::size_t i = start; i + (q - pos) <= nvars; ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return w;
}

struct NamedFan {
  std::string name;
  Fan fan;
};

/// P^n, Bl_p(P^n), H_r, pairwise products and iterated blow-ups at fixed points.
inline std::vector<NamedFan> catalog() {
  std::vector<NamedFan> out;
  for (std::size_t n = 1; n <= 4; ++n) out.push_back({"P" + std::to_string(n), projective_space(n)});
  for (std::size_t n = 2; n <= 4; ++n) out.push_back({"Bl_p(P" + std::to_string(n) + ")", blowup_projective_space(n)});
  for (int r = 0; r <= 3; ++r) out.push_back({"H" + std::to_string(r), hirzebruch(r)});
  out.push_back({"P1xP1", product(projective_space(1), projective_space(1))});
  out.push_back({"P1xP2", product(projective_space(1), projective_space(2))});
  out.push_back({"P1xH1", product(projective_space(1), hirzebruch(1))});
  out.push_back({"Bl_p(P2)xP1", product(blowup_projective_space(2), projective_space(1))});
  // blow up Bl_p(P2) at the fixed point Cone(e1, -e1-e2) = rays {0, 3}
  out.push_back({"Bl_2(P2)", star_subdivision(blowup_projective_space(2), {0, 3})});
  out.push_back({"Bl_2(P3)", star_subdivision(blowup_projective_space(3), {0, 1, 4})});
  return out;
}

}  // namespace toricfol::testing
