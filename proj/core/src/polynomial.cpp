#include "toricfol/polynomial.hpp"

#include <algorithm>

#include "toricfol/error.hpp"

namespace toricfol {

std::uint64_t total_degree(const Exponents& e) {
  std::uint64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool DegRevLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = toricfol::total_degree(a);
  const auto db = toricfol::total_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

namespace {

void check_ring(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars())
    throw DomainError("coxcalc.ring", "polynomials in " + std::to_string(a.nvars()) + " and " +
                                          std::to_string(b.nvars()) + " variables");
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Exponents e(nvars, 0);
  e.at(i) = 1;
  Polynomial p(nvars);
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(Exponents e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

std::optional<Rational> Polynomial::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && total_degree() == 0) return terms_.begin()->second;
  return std::nullopt;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  if (e.size() != nvars_) throw DomainError("coxcalc.ring", "exponent vector of wrong length");
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : toricfol::total_degree(terms_.begin()->first);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_ring(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_ring(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_ring(a, b);
  Polynomial out(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial out = constant(nvars_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) out = out * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return out;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents f = e;
    --f[i];
    out.add_term(f, c * e[i]);
  }
  return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw DomainError("coxcalc.ring", "substitution needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  // cache powers of each image
  std::vector<std::vector<Polynomial>> powers(nvars_);
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, 1));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[e[i]];
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::specialize(const std::vector<std::optional<Rational>>& values) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    Rational k = c;
    Exponents f = e;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!values[i] || f[i] == 0) continue;
      Rational p = 1;
      for (std::uint32_t j = 0; j < f[i]; ++j) p *= *values[i];
      k *= p;
      f[i] = 0;
    }
    out.add_term(f, k);
  }
  return out;
}

Polynomial Polynomial::extend(std::size_t nvars) const {
  if (nvars < nvars_) throw DomainError("coxcalc.ring", "cannot shrink a ring by extension");
  Polynomial out(nvars);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f.resize(nvars, 0);
    out.add_term(f, c);
  }
  return out;
}

Polynomial Polynomial::shift(const Exponents& m) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (std::size_t i = 0; i < nvars_; ++i) f[i] += m[i];
    out.add_term(f, c);
  }
  return out;
}

Exponents Polynomial::monomial_content() const {
  if (terms_.empty()) return Exponents(nvars_, 0);
  Exponents m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  check_ring(*this, divisor);
  if (divisor.is_zero()) throw DomainError("coxcalc.division", "division by zero polynomial");
  Polynomial rem = *this;
  Polynomial quot(nvars_);
  const Exponents& lt = divisor.leading_exponents();
  const Rational& lc = divisor.leading_coefficient();
  while (!rem.is_zero()) {
    const Exponents& e = rem.leading_exponents();
    Exponents q(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] < lt[i]) return std::nullopt;
      q[i] = e[i] - lt[i];
    }
    Rational c = rem.leading_coefficient() / lc;
    quot.add_term(q, c);
    rem -= divisor.shift(q) * c;
  }
  return quot;
}

}  // namespace toricfol
