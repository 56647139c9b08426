#pragma once

#include <map>
#include <optional>
#include <vector>

#include "toricfol/picard.hpp"
#include "toricfol/polynomial.hpp"

namespace toricfol {

/// Sorted strictly increasing variable indices of a basis form dx_J.
using Indices = std::vector<std::size_t>;

/// Sign of the permutation sorting `idx`, and the sorted result; 0 on repeats.
int sort_indices(Indices& idx);

/// Cox degree of a nonzero quasi-homogeneous polynomial, nullopt otherwise.
std::optional<MultiDegree> try_degree_of(const Polynomial& p, const DegreeData& dd);
/// As above, throwing DomainError("coxcalc.homogeneous").
MultiDegree degree_of(const Polynomial& p, const DegreeData& dd);

/// Exponent vectors of all monomials of Cox degree alpha, in descending
/// degrevlex order. Requires a strictly convex effective cone.
std::vector<Exponents> graded_piece_basis(const DegreeData& dd, const MultiDegree& alpha);

/// Polynomial vector field sum_j Y_j d/dx_j on the Cox affine space.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::size_t nvars);
  explicit VectorField(std::vector<Polynomial> components);

  /// Validate quasi-homogeneity: every nonzero Y_j lies in degree
  /// alpha + deg x_j. With no declared degree it is inferred, and a zero
  /// field then needs one.
  static VectorField graded(const DegreeData& dd, std::vector<Polynomial> components,
                            std::optional<MultiDegree> declared = std::nullopt);

  std::size_t nvars() const noexcept { return comps_.size(); }
  const Polynomial& operator[](std::size_t j) const { return comps_.at(j); }
  const std::vector<Polynomial>& components() const noexcept { return comps_; }
  const std::optional<MultiDegree>& degree() const noexcept { return degree_; }
  void set_degree(std::optional<MultiDegree> d) { degree_ = std::move(d); }
  bool is_zero() const;

  /// Y(f) = sum_j Y_j df/dx_j
  Polynomial apply(const Polynomial& f) const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Polynomial& f, const VectorField& y);
  friend VectorField operator*(const Rational& c, const VectorField& y);
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comps_ == b.comps_; }

 private:
  std::vector<Polynomial> comps_;
  std::optional<MultiDegree> degree_;
};

/// Polynomial differential q-form sum_J f_J dx_J.
class DiffForm {
 public:
  using TermMap = std::map<Indices, Polynomial>;

  DiffForm() = default;
  DiffForm(std::size_t nvars, std::size_t q) : nvars_(nvars), q_(q) {}

  static DiffForm function(const Polynomial& f);
  /// f dx_{idx} for an arbitrary ordering of distinct indices.
  static DiffForm basis(std::size_t nvars, Indices idx, const Polynomial& f);

  /// Validate quasi-homogeneity (as for VectorField::graded) and record it.
  DiffForm graded(const DegreeData& dd, std::optional<MultiDegree> declared = std::nullopt) const;

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t q() const noexcept { return q_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::optional<MultiDegree>& degree() const noexcept { return degree_; }
  void set_degree(std::optional<MultiDegree> d) { degree_ = std::move(d); }

  /// Add f dx_{idx}; idx need not be sorted, repeated indices add nothing.
  void add_term(Indices idx, const Polynomial& f);
  Polynomial coefficient(const Indices& sorted) const;
  /// Monomial gcd of all coefficients.
  Exponents monomial_content() const;

  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  DiffForm operator-() const;
  friend DiffForm operator*(const Polynomial& f, const DiffForm& w);
  friend DiffForm operator*(const Rational& c, const DiffForm& w);
  /// Exact division of every coefficient; nullopt if any fails.
  std::optional<DiffForm> divide_exact(const Polynomial& f) const;
  /// Whether the two forms are proportional, and if so the factor c with
  /// a == c * b (b nonzero).
  friend std::optional<Rational> proportionality(const DiffForm& a, const DiffForm& b);

  /// Coefficients on coordinates of a point, keyed by basis element.
  template <typename R>
  std::map<Indices, R> evaluate(const std::vector<R>& pt) const {
    std::map<Indices, R> out;
    for (const auto& [J, f] : terms_) out.emplace(J, f.evaluate(pt));
    return out;
  }

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.nvars_ == b.nvars_ && a.q_ == b.q_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_ = 0;
  std::size_t q_ = 0;
  TermMap terms_;
  std::optional<MultiDegree> degree_;
};

/// Cox degree of a form: the recorded one, else inferred from its terms.
MultiDegree degree_of_form(const DiffForm& w, const DegreeData& dd);

/// dx_1 ^ ... ^ dx_N, with degree sum_i [D_i] when dd is given.
DiffForm volume_form(std::size_t nvars);
DiffForm volume_form(const DegreeData& dd);

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm exterior_derivative(const DiffForm& w);
/// Interior product iota_Y w; w must have positive degree.
DiffForm contract(const VectorField& y, const DiffForm& w);
/// iota_{Y_1} ... iota_{Y_k} w: the last field is applied first.
DiffForm contract_all(const std::vector<VectorField>& ys, const DiffForm& w);
/// [Z, Y]_j = Z(Y_j) - Y(Z_j)
VectorField lie_bracket(const VectorField& z, const VectorField& y);
Polynomial divergence(const VectorField& y);
/// L_Z w computed coefficientwise (independent of Cartan's formula).
DiffForm lie_derivative(const VectorField& z, const DiffForm& w);

}  // namespace toricfol
