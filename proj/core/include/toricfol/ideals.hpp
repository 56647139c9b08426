#pragma once

#include <optional>
#include <vector>

#include "toricfol/fan.hpp"
#include "toricfol/polynomial.hpp"

namespace toricfol {

enum class MonomialOrder { DegRevLex, Lex };

/// a > b in the given monomial order.
bool monomial_greater(MonomialOrder order, const Exponents& a, const Exponents& b);

/// Reduced Groebner basis by Buchberger's algorithm with normal pair
/// selection and the product and chain criteria. Elements are monic and
/// sorted by decreasing leading monomial; {} for the zero ideal, {1} for the
/// unit ideal. Deterministic for a given generator order.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators,
                                       MonomialOrder order = MonomialOrder::DegRevLex);

/// Normal form of f modulo a Groebner basis.
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& basis,
                  MonomialOrder order = MonomialOrder::DegRevLex);

/// Leading exponent of a nonzero polynomial in the given order.
Exponents leading_exponents(const Polynomial& f, MonomialOrder order);

/// Largest variable subset U with no generator supported on U alone; the
/// dimension of the monomial ideal they generate (-1 if one is constant).
int monomial_ideal_dimension(std::size_t nvars, const std::vector<Exponents>& generators);

/// Polynomial ideal with a lazily cached reduced Groebner basis. Not safe to
/// share one instance across threads before the basis has been computed.
class Ideal {
 public:
  explicit Ideal(std::size_t nvars, std::vector<Polynomial> generators = {});

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  const std::vector<Polynomial>& basis(MonomialOrder order = MonomialOrder::DegRevLex) const;
  bool contains(const Polynomial& f) const;
  bool is_unit() const;

  /// Krull dimension of V(I) in affine space; -1 for the unit ideal.
  int dimension() const;
  /// Dimension of V(I) minus the union of the coordinate subspaces
  /// {x_i = 0 : i in c}; -1 when V(I) lies inside that union.
  int dimension_outside(const std::vector<RaySet>& collections) const;

  Ideal operator+(const Ideal& o) const;

 private:
  std::size_t nvars_;
  std::vector<Polynomial> gens_;
  mutable std::optional<std::vector<Polynomial>> grevlex_;
  mutable std::optional<std::vector<Polynomial>> lex_;
};

int dimension_outside_irrelevant(const Ideal& ideal, const std::vector<RaySet>& collections);

/// Codimension in the toric variety of the fan of the image of V(I) minus Z:
/// nvars - dimension_outside_irrelevant, since the quotient by G drops s
/// from both the ambient dimension and the dimension of V(I) minus Z.
/// nullopt when the image is empty.
std::optional<std::size_t> codim_in_variety(const Ideal& ideal, const Fan& fan);

}  // namespace toricfol
