#include "toricfol/forms.hpp"

#include <algorithm>

#include "toricfol/error.hpp"

namespace toricfol {

namespace {

std::optional<MultiDegree> add_degrees(const std::optional<MultiDegree>& a,
                                       const std::optional<MultiDegree>& b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

// degree of a sum: keep the degree of the nonzero summand, reject mixed sums
std::optional<MultiDegree> merge_degrees(const std::optional<MultiDegree>& a, bool a_zero,
                                         const std::optional<MultiDegree>& b, bool b_zero) {
  if (b_zero) return a;
  if (a_zero) return b;
  if (a && b && *a != *b)
    throw DomainError("coxcalc.homogeneous",
                      "sum of terms of degrees " + a->str() + " and " + b->str());
  if (a && b) return a;
  return std::nullopt;
}

void check_nvars(std::size_t a, std::size_t b) {
  if (a != b)
    throw DomainError("coxcalc.ring", "objects over " + std::to_string(a) + " and " + std::to_string(b) +
                                          " variables");
}

MultiDegree monomial_degree(const Exponents& e, const DegreeData& dd) {
  MultiDegree d = dd.zero();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) d += static_cast<std::int64_t>(e[i]) * dd.var_degree(i);
  return d;
}

MultiDegree indices_degree(const Indices& J, const DegreeData& dd) {
  MultiDegree d = dd.zero();
  for (auto j : J) d += dd.var_degree(j);
  return d;
}

}  // namespace

int sort_indices(Indices& idx) {
  int sign = 1;
  // insertion sort counting transpositions
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t k = i; k > 0 && idx[k - 1] >= idx[k]; --k) {
      if (idx[k - 1] == idx[k]) return 0;
      std::swap(idx[k - 1], idx[k]);
      sign = -sign;
    }
  return sign;
}

std::optional<MultiDegree> try_degree_of(const Polynomial& p, const DegreeData& dd) {
  if (p.is_zero() || p.nvars() != dd.nvars()) return std::nullopt;
  std::optional<MultiDegree> d;
  for (const auto& [e, c] : p.terms()) {
    MultiDegree m = monomial_degree(e, dd);
    if (!d) d = m;
    else if (*d != m) return std::nullopt;
  }
  return d;
}

MultiDegree degree_of(const Polynomial& p, const DegreeData& dd) {
  if (p.is_zero()) throw DomainError("coxcalc.homogeneous", "the zero polynomial has no degree");
  check_nvars(p.nvars(), dd.nvars());
  auto d = try_degree_of(p, dd);
  if (!d) throw DomainError("coxcalc.homogeneous", "polynomial is not quasi-homogeneous");
  return *d;
}

std::vector<Exponents> graded_piece_basis(const DegreeData& dd, const MultiDegree& alpha) {
  const auto& cone = dd.effective_cone();
  if (!cone.strictly_convex)
    throw DomainError("coxcalc.strictly_convex", "graded pieces need a strictly convex effective cone");
  if (alpha.size() != dd.s()) throw DomainError("picard.degree_length", "degree " + alpha.str());
  const std::size_t N = dd.nvars();
  RatVector w(dd.s(), 0);
  for (const auto& f : cone.facets)
    for (std::size_t t = 0; t < dd.s(); ++t) w[t] += f[t];
  auto weigh = [&](const MultiDegree& d) {
    Rational acc = 0;
    for (std::size_t t = 0; t < dd.s(); ++t) acc += w[t] * d[t];
    return acc;
  };
  std::vector<Rational> wv(N);
  for (std::size_t i = 0; i < N; ++i) {
    wv[i] = weigh(dd.var_degree(i));
    if (wv[i] <= 0)
      throw DomainError("coxcalc.strictly_convex", "variable x" + std::to_string(i + 1) + " has weight <= 0");
  }
  std::vector<Exponents> out;
  if (!cone_contains(cone, alpha.to_rational())) return out;
  Exponents e(N, 0);
  auto rec = [&](auto&& self, std::size_t i, const MultiDegree& rest) -> void {
    if (i == N) {
      if (rest.is_zero()) out.push_back(e);
      return;
    }
    Rational room = weigh(rest);
    if (room < 0) return;
    const mpz_class bound(Rational(room / wv[i]));  // floor, both nonnegative
    const auto top = bound.get_ui();
    MultiDegree r = rest;
    for (unsigned long k = 0;; ++k) {
      e[i] = static_cast<std::uint32_t>(k);
      self(self, i + 1, r);
      if (k == top) break;
      r -= dd.var_degree(i);
    }
    e[i] = 0;
  };
  rec(rec, 0, alpha);
  std::sort(out.begin(), out.end(), DegRevLexGreater{});
  return out;
}

// ---------------------------------------------------------------- fields

VectorField::VectorField(std::size_t nvars) : comps_(nvars, Polynomial(nvars)) {}

VectorField::VectorField(std::vector<Polynomial> components) : comps_(std::move(components)) {
  for (const auto& c : comps_) check_nvars(c.nvars(), comps_.size());
}

VectorField VectorField::graded(const DegreeData& dd, std::vector<Polynomial> components,
                                std::optional<MultiDegree> declared) {
  VectorField y(std::move(components));
  check_nvars(y.nvars(), dd.nvars());
  std::optional<MultiDegree> alpha = declared;
  for (std::size_t j = 0; j < y.nvars(); ++j) {
    if (y.comps_[j].is_zero()) continue;
    auto d = try_degree_of(y.comps_[j], dd);
    if (!d)
      throw DomainError("coxcalc.homogeneous", "component " + std::to_string(j + 1) + " is not quasi-homogeneous");
    MultiDegree a = *d - dd.var_degree(j);
    if (!alpha) alpha = a;
    else if (*alpha != a)
      throw DomainError("coxcalc.homogeneous", "component " + std::to_string(j + 1) + " has field degree " +
                                                   a.str() + ", expected " + alpha->str());
  }
  if (!alpha) throw DomainError("coxcalc.homogeneous", "a zero field needs a declared degree");
  y.degree_ = alpha;
  return y;
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial VectorField::apply(const Polynomial& f) const {
  check_nvars(f.nvars(), nvars());
  Polynomial out(nvars());
  for (std::size_t j = 0; j < nvars(); ++j)
    if (!comps_[j].is_zero()) out += comps_[j] * f.derivative(j);
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  check_nvars(nvars(), o.nvars());
  degree_ = merge_degrees(degree_, is_zero(), o.degree_, o.is_zero());
  for (std::size_t j = 0; j < nvars(); ++j) comps_[j] += o.comps_[j];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  check_nvars(nvars(), o.nvars());
  degree_ = merge_degrees(degree_, is_zero(), o.degree_, o.is_zero());
  for (std::size_t j = 0; j < nvars(); ++j) comps_[j] -= o.comps_[j];
  return *this;
}

VectorField operator*(const Polynomial& f, const VectorField& y) {
  VectorField out = y;
  for (auto& c : out.comps_) c = f * c;
  out.degree_ = std::nullopt;
  return out;
}

VectorField operator*(const Rational& c, const VectorField& y) {
  VectorField out = y;
  for (auto& p : out.comps_) p *= c;
  return out;
}

// ---------------------------------------------------------------- forms

DiffForm DiffForm::function(const Polynomial& f) {
  DiffForm w(f.nvars(), 0);
  w.add_term({}, f);
  return w;
}

DiffForm DiffForm::basis(std::size_t nvars, Indices idx, const Polynomial& f) {
  DiffForm w(nvars, idx.size());
  w.add_term(std::move(idx), f);
  return w;
}

DiffForm DiffForm::graded(const DegreeData& dd, std::optional<MultiDegree> declared) const {
  check_nvars(nvars_, dd.nvars());
  std::optional<MultiDegree> d = declared;
  for (const auto& [J, f] : terms_) {
    auto fd = try_degree_of(f, dd);
    if (!fd) throw DomainError("coxcalc.homogeneous", "a coefficient is not quasi-homogeneous");
    MultiDegree t = *fd + indices_degree(J, dd);
    if (!d) d = t;
    else if (*d != t)
      throw DomainError("coxcalc.homogeneous", "form has terms of degrees " + d->str() + " and " + t.str());
  }
  if (!d) throw DomainError("coxcalc.homogeneous", "a zero form needs a declared degree");
  DiffForm out = *this;
  out.degree_ = d;
  return out;
}

void DiffForm::add_term(Indices idx, const Polynomial& f) {
  if (f.is_zero()) return;
  check_nvars(f.nvars(), nvars_);
  if (idx.size() != q_) throw DomainError("coxcalc.ring", "basis element of the wrong form degree");
  for (auto j : idx)
    if (j >= nvars_) throw DomainError("coxcalc.ring", "dx index out of range");
  int sign = sort_indices(idx);
  if (sign == 0) return;
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    terms_.emplace(std::move(idx), sign > 0 ? f : -f);
    return;
  }
  if (sign > 0) it->second += f;
  else it->second -= f;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial DiffForm::coefficient(const Indices& sorted) const {
  auto it = terms_.find(sorted);
  return it == terms_.end() ? Polynomial(nvars_) : it->second;
}

Exponents DiffForm::monomial_content() const {
  std::optional<Exponents> m;
  for (const auto& [J, f] : terms_) {
    Exponents c = f.monomial_content();
    if (!m) m = c;
    else
      for (std::size_t i = 0; i < nvars_; ++i) (*m)[i] = std::min((*m)[i], c[i]);
  }
  return m ? *m : Exponents(nvars_, 0);
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  check_nvars(nvars_, o.nvars_);
  if (q_ != o.q_) throw DomainError("coxcalc.ring", "adding forms of different degree");
  degree_ = merge_degrees(degree_, is_zero(), o.degree_, o.is_zero());
  for (const auto& [J, f] : o.terms_) add_term(J, f);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) {
  check_nvars(nvars_, o.nvars_);
  if (q_ != o.q_) throw DomainError("coxcalc.ring", "subtracting forms of different degree");
  degree_ = merge_degrees(degree_, is_zero(), o.degree_, o.is_zero());
  for (const auto& [J, f] : o.terms_) add_term(J, -f);
  return *this;
}

DiffForm DiffForm::operator-() const {
  DiffForm out = *this;
  for (auto& [J, f] : out.terms_) f = -f;
  return out;
}

DiffForm operator*(const Polynomial& f, const DiffForm& w) {
  DiffForm out(w.nvars_, w.q_);
  for (const auto& [J, g] : w.terms_) out.add_term(J, f * g);
  return out;
}

DiffForm operator*(const Rational& c, const DiffForm& w) {
  DiffForm out = w;
  if (c == 0) out.terms_.clear();
  for (auto& [J, g] : out.terms_) g *= c;
  return out;
}

std::optional<DiffForm> DiffForm::divide_exact(const Polynomial& f) const {
  DiffForm out(nvars_, q_);
  for (const auto& [J, g] : terms_) {
    auto h = g.divide_exact(f);
    if (!h) return std::nullopt;
    out.add_term(J, *h);
  }
  return out;
}

std::optional<Rational> proportionality(const DiffForm& a, const DiffForm& b) {
  if (b.is_zero() || a.nvars_ != b.nvars_ || a.q_ != b.q_) return std::nullopt;
  if (a.is_zero()) return Rational(0);
  const auto& [J, g] = *b.terms_.begin();
  Polynomial h = a.coefficient(J);
  if (h.is_zero()) return std::nullopt;
  Rational c = h.leading_coefficient() / g.leading_coefficient();
  if (!(a == c * b)) return std::nullopt;
  return c;
}

MultiDegree degree_of_form(const DiffForm& w, const DegreeData& dd) {
  if (w.degree()) return *w.degree();
  return *w.graded(dd).degree();
}

DiffForm volume_form(std::size_t nvars) {
  Indices all(nvars);
  for (std::size_t i = 0; i < nvars; ++i) all[i] = i;
  return DiffForm::basis(nvars, all, Polynomial::constant(nvars, 1));
}

DiffForm volume_form(const DegreeData& dd) {
  DiffForm w = volume_form(dd.nvars());
  MultiDegree d = dd.zero();
  for (const auto& v : dd.var_degrees()) d += v;
  w.set_degree(d);
  return w;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  check_nvars(a.nvars(), b.nvars());
  DiffForm out(a.nvars(), a.q() + b.q());
  for (const auto& [I, f] : a.terms())
    for (const auto& [J, g] : b.terms()) {
      Indices K = I;
      K.insert(K.end(), J.begin(), J.end());
      out.add_term(std::move(K), f * g);
    }
  out.set_degree(add_degrees(a.degree(), b.degree()));
  return out;
}

DiffForm exterior_derivative(const DiffForm& w) {
  DiffForm out(w.nvars(), w.q() + 1);
  for (const auto& [J, f] : w.terms())
    for (std::size_t i = 0; i < w.nvars(); ++i) {
      Polynomial df = f.derivative(i);
      if (df.is_zero()) continue;
      Indices K{i};
      K.insert(K.end(), J.begin(), J.end());
      out.add_term(std::move(K), df);
    }
  out.set_degree(w.degree());
  return out;
}

DiffForm contract(const VectorField& y, const DiffForm& w) {
  check_nvars(y.nvars(), w.nvars());
  if (w.q() == 0) throw DomainError("coxcalc.contract_function", "cannot contract a 0-form");
  DiffForm out(w.nvars(), w.q() - 1);
  for (const auto& [J, f] : w.terms())
    for (std::size_t k = 0; k < J.size(); ++k) {
      const Polynomial& yk = y[J[k]];
      if (yk.is_zero()) continue;
      Indices K;
      for (std::size_t m = 0; m < J.size(); ++m)
        if (m != k) K.push_back(J[m]);
      out.add_term(std::move(K), k % 2 == 0 ? yk * f : -(yk * f));
    }
  out.set_degree(add_degrees(y.degree(), w.degree()));
  return out;
}

DiffForm contract_all(const std::vector<VectorField>& ys, const DiffForm& w) {
  DiffForm out = w;
  for (std::size_t i = ys.size(); i-- > 0;) out = contract(ys[i], out);
  return out;
}

VectorField lie_bracket(const VectorField& z, const VectorField& y) {
  check_nvars(z.nvars(), y.nvars());
  std::vector<Polynomial> c;
  c.reserve(z.nvars());
  for (std::size_t j = 0; j < z.nvars(); ++j) c.push_back(z.apply(y[j]) - y.apply(z[j]));
  VectorField out(std::move(c));
  out.set_degree(add_degrees(z.degree(), y.degree()));
  return out;
}

Polynomial divergence(const VectorField& y) {
  Polynomial out(y.nvars());
  for (std::size_t j = 0; j < y.nvars(); ++j) out += y[j].derivative(j);
  return out;
}

DiffForm lie_derivative(const VectorField& z, const DiffForm& w) {
  check_nvars(z.nvars(), w.nvars());
  DiffForm out(w.nvars(), w.q());
  // partial derivatives of the components, computed once
  std::vector<std::vector<Polynomial>> dz(z.nvars());
  for (const auto& [J, f] : w.terms()) {
    out.add_term(J, z.apply(f));
    for (std::size_t k = 0; k < J.size(); ++k) {
      auto& row = dz[J[k]];
      if (row.empty())
        for (std::size_t i = 0; i < z.nvars(); ++i) row.push_back(z[J[k]].derivative(i));
      for (std::size_t i = 0; i < z.nvars(); ++i) {
        if (row[i].is_zero()) continue;
        Indices K = J;
        K[k] = i;
        out.add_term(std::move(K), f * row[i]);
      }
    }
  }
  out.set_degree(add_degrees(z.degree(), w.degree()));
  return out;
}

}  // namespace toricfol
