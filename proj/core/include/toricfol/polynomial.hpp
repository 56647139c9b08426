#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricfol/lattice.hpp"

namespace toricfol {

using Exponents = std::vector<std::uint32_t>;

std::uint64_t total_degree(const Exponents& e);

/// Strict "a comes after b" in descending degrevlex: a > b.
struct DegRevLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial over Q in a fixed number of variables. Terms are kept in
/// descending degrevlex order and zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, DegRevLexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(Exponents e, const Rational& c = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  const TermMap& terms() const noexcept { return terms_; }
  /// constant term's coefficient if the polynomial is constant
  std::optional<Rational> as_constant() const;

  void add_term(const Exponents& e, const Rational& c);
  Rational coefficient(const Exponents& e) const;

  /// Degrevlex-leading exponent and coefficient; precondition: nonzero.
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  std::uint64_t total_degree() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;
  Polynomial pow(unsigned k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial derivative(std::size_t i) const;
  /// Replace x_i by images[i] (all images share one ring).
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  /// Fix some variables to constants, keeping the ring.
  Polynomial specialize(const std::vector<std::optional<Rational>>& values) const;
  /// Same polynomial in a ring with more (trailing) variables.
  Polynomial extend(std::size_t nvars) const;
  /// Multiply by the monomial x^e.
  Polynomial shift(const Exponents& e) const;

  /// Componentwise minimum exponent over all terms (monomial gcd).
  Exponents monomial_content() const;
  /// Exact division by a nonzero divisor via degrevlex division with
  /// remainder; nullopt if the remainder is nonzero.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  template <typename R>
  R evaluate(const std::vector<R>& point) const {
    R acc{};
    for (const auto& [e, c] : terms_) {
      R t = R(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) t = t * point[i];
      acc = acc + t;
    }
    return acc;
  }

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Elements of Q(i), used when evaluating at points with Gaussian-rational
/// coordinates (e.g. the components of x1^2 + x2^2 = 0).
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(const Rational& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(const Rational& r, const Rational& i) : re(r), im(i) {}

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  bool is_zero() const { return re == 0 && im == 0; }
};

}  // namespace toricfol
