#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "toricfol/fan.hpp"
#include "toricfol/lattice.hpp"

namespace toricfol {

/// An element of Pic(X) = Z^s in the basis fixed by a DegreeData.
class MultiDegree {
 public:
  MultiDegree() = default;
  explicit MultiDegree(std::size_t s) : v_(s, 0) {}
  MultiDegree(std::initializer_list<std::int64_t> v) : v_(v) {}
  explicit MultiDegree(std::vector<std::int64_t> v) : v_(std::move(v)) {}

  std::size_t size() const noexcept { return v_.size(); }
  std::int64_t operator[](std::size_t i) const { return v_[i]; }
  std::int64_t& operator[](std::size_t i) { return v_[i]; }
  const std::vector<std::int64_t>& values() const noexcept { return v_; }
  bool is_zero() const;

  MultiDegree& operator+=(const MultiDegree& o);
  MultiDegree& operator-=(const MultiDegree& o);
  friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) { return a += b; }
  friend MultiDegree operator-(MultiDegree a, const MultiDegree& b) { return a -= b; }
  MultiDegree operator-() const;
  friend MultiDegree operator*(std::int64_t k, MultiDegree a);

  friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
  friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;

  RatVector to_rational() const;
  std::string str() const;

 private:
  std::vector<std::int64_t> v_;
};

/// Polyhedral cone in Q^s, with facet functionals phi such that
/// v in cone <=> phi(v) >= 0 for every facet.
struct RationalCone {
  std::size_t dim = 0;
  std::vector<RatVector> generators;
  /// primitive integer normals, sorted lexicographically
  std::vector<RatVector> facets;
  bool strictly_convex = false;
};

/// Facets by enumerating supporting hyperplanes spanned by dim-1 generators.
/// Throws DomainError("picard.full_dimensional") when the generators do not
/// span Q^dim.
RationalCone make_cone(std::size_t dim, std::vector<RatVector> generators);

/// Membership by facet evaluation.
bool cone_contains(const RationalCone& cone, const RatVector& v);
/// Membership by searching for a nonnegative combination of linearly
/// independent generators (Caratheodory); independent of the facets.
bool cone_contains_by_combination(const RationalCone& cone, const RatVector& v);

/// Grading of the Cox ring: column i of the degree matrix is deg(x_i) = [D_i].
class DegreeData {
 public:
  DegreeData() = default;
  /// `degree_matrix` is s x N; columns must span Z^s.
  explicit DegreeData(IntMatrix degree_matrix);

  std::size_t s() const noexcept { return s_; }
  std::size_t nvars() const noexcept { return columns_.size(); }
  const IntMatrix& degree_matrix() const noexcept { return matrix_; }
  const MultiDegree& var_degree(std::size_t i) const { return columns_.at(i); }
  const std::vector<MultiDegree>& var_degrees() const noexcept { return columns_; }
  MultiDegree zero() const { return MultiDegree(s_); }
  /// omega_X = -sum_i [D_i]
  MultiDegree canonical() const;
  const RationalCone& effective_cone() const noexcept { return eff_; }

  /// Row t of the degree matrix: the weights of the radial field R_t.
  std::vector<std::int64_t> weights(std::size_t t) const;

 private:
  std::size_t s_ = 0;
  IntMatrix matrix_;
  std::vector<MultiDegree> columns_;
  RationalCone eff_;
};

/// Pic(X) as the cokernel of the pairing matrix, basis fixed by the SNF
/// projection followed by row Hermite normalization (so the result only
/// depends on the fan). Throws on torsion or missing preconditions.
DegreeData grading(const Fan& fan);

inline const RationalCone& effective_cone(const DegreeData& dd) { return dd.effective_cone(); }

/// alpha < beta  <=>  alpha - beta is not effective.
bool precedes(const DegreeData& dd, const MultiDegree& alpha, const MultiDegree& beta);

/// Exhaustive pairwise test: every other class is equal or precedes [D_i].
bool is_maximal(const DegreeData& dd, std::size_t i);

/// Maximal divisors computed twice: by lexicographic maxima of the facet
/// functionals (over every ordering of the facets, closed under linear
/// equivalence) and by exhaustive pairwise tests. Throws
/// DomainError("picard.maximal_cross_check") if the two disagree.
std::vector<std::size_t> maximal_divisors(const DegreeData& dd);
std::vector<std::size_t> maximal_divisors_lexicographic(const DegreeData& dd);
std::vector<std::size_t> maximal_divisors_pairwise(const DegreeData& dd);

/// Blocks Delta(i) of linearly equivalent divisors, ordered by first index.
std::vector<std::vector<std::size_t>> equivalence_classes(const DegreeData& dd);
/// The block containing divisor i.
std::vector<std::size_t> equivalence_class(const DegreeData& dd, std::size_t i);

/// A unimodular W with W * from == to, if one exists.
std::optional<IntMatrix> unimodular_equivalence(const IntMatrix& from, const IntMatrix& to);

}  // namespace toricfol
