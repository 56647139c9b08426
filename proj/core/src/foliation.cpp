#include "toricfol/foliation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "toricfol/error.hpp"

namespace toricfol {

namespace {

VectorField coordinate_field(std::size_t nvars, std::size_t j) {
  std::vector<Polynomial> c(nvars, Polynomial(nvars));
  c[j] = Polynomial::constant(nvars, 1);
  return VectorField(std::move(c));
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const Indices&)>& fn) {
  Indices idx(k);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
}

DiffForm contract_coordinates(const Indices& v, const DiffForm& w) {
  DiffForm out = w;
  for (auto j : v) out = contract(coordinate_field(w.nvars(), j), out);
  return out;
}

// true iff test(iota_v a) vanishes for every coordinate (q-1)-multivector v
bool for_all_multivectors(const DiffForm& omega, const std::function<bool(const Indices&)>& test) {
  if (omega.q() == 0) return true;
  bool ok = true;
  for_each_subset(omega.nvars(), omega.q() - 1, [&](const Indices& v) {
    if (ok) ok = test(v);
  });
  return ok;
}

DiffForm phi(const std::vector<VectorField>& fields, const std::vector<VectorField>& radials, const DegreeData& dd) {
  std::vector<VectorField> all = fields;
  all.insert(all.end(), radials.begin(), radials.end());
  return contract_all(all, volume_form(dd));
}

// exact quotient theta / omega for a form theta that is a polynomial multiple
std::optional<Polynomial> form_quotient(const DiffForm& theta, const DiffForm& omega) {
  if (omega.is_zero()) return std::nullopt;
  if (theta.is_zero()) return Polynomial(omega.nvars());
  const auto& [J, w] = *omega.terms().begin();
  auto g = theta.coefficient(J).divide_exact(w);
  if (!g) return std::nullopt;
  if (!(*g * omega == theta)) return std::nullopt;
  return g;
}

std::optional<Rational> integer_ratio(const DiffForm& theta, const DiffForm& omega) {
  if (theta.is_zero()) return Rational(0);
  return proportionality(theta, omega);
}

// Flattened coordinates of forms, keyed by (tag, basis element, monomial).
struct FormCoordinates {
  using Key = std::tuple<std::size_t, Indices, Exponents>;
  std::map<Key, std::size_t> index;

  std::vector<std::pair<std::size_t, Rational>> add(std::size_t tag, const DiffForm& w) {
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [J, f] : w.terms())
      for (const auto& [e, c] : f.terms()) {
        auto [it, fresh] = index.try_emplace(Key{tag, J, e}, index.size());
        out.emplace_back(it->second, c);
      }
    return out;
  }
};

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

RatMatrix dense(const std::vector<SparseColumn>& vecs, std::size_t dim, bool as_columns) {
  RatMatrix m = as_columns ? RatMatrix(dim, vecs.size()) : RatMatrix(vecs.size(), dim);
  for (std::size_t k = 0; k < vecs.size(); ++k)
    for (const auto& [i, c] : vecs[k]) {
      if (as_columns) m(i, k) += c;
      else m(k, i) += c;
    }
  return m;
}

std::size_t rank_of(const std::vector<SparseColumn>& vecs, std::size_t dim) {
  if (vecs.empty()) return 0;
  return rank(dense(vecs, dim, false));
}

}  // namespace

std::vector<VectorField> radial_fields(const DegreeData& dd) {
  const std::size_t N = dd.nvars();
  std::vector<VectorField> out;
  for (std::size_t t = 0; t < dd.s(); ++t) {
    auto a = dd.weights(t);
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < N; ++i) c.push_back(Polynomial::variable(N, i) * Rational(a[i]));
    VectorField r(std::move(c));
    r.set_degree(dd.zero());
    out.push_back(std::move(r));
  }
  return out;
}

SplitData build_omega(const DegreeData& dd, std::vector<VectorField> fields) {
  const std::size_t N = dd.nvars();
  const std::size_t n = N - dd.s();
  if (fields.size() >= n)
    throw DomainError("foliation.codimension", std::to_string(fields.size()) + " fields leave no codimension on a " +
                                                   std::to_string(n) + "-dimensional variety");
  SplitData sd;
  sd.q = n - fields.size();
  MultiDegree sum = dd.zero();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].nvars() != N) throw DomainError("coxcalc.ring", "field " + std::to_string(i + 1) + " in the wrong ring");
    if (!fields[i].degree())
      throw DomainError("foliation.field_degree", "field " + std::to_string(i + 1) + " has no declared degree");
    sd.alphas.push_back(-*fields[i].degree());
    sum += *fields[i].degree();
  }
  sd.omega = phi(fields, radial_fields(dd), dd);
  if (sd.omega.is_zero())
    throw DomainError("foliation.omega_zero", "the fields and radial fields are everywhere dependent");
  sd.cox_degree = sum - dd.canonical();
  sd.omega.set_degree(sd.cox_degree);
  sd.label = dd.canonical() - sum;
  sd.fields = std::move(fields);
  return sd;
}

bool check_descent(const DiffForm& omega, const DegreeData& dd) {
  if (omega.is_zero()) return true;
  if (omega.nvars() != dd.nvars() || omega.q() == 0) return false;
  try {
    (void)omega.graded(dd);
  } catch (const DomainError&) {
    return false;
  }
  for (const auto& r : radial_fields(dd))
    if (!contract(r, omega).is_zero()) return false;
  return true;
}

bool check_ldc(const DiffForm& omega) {
  return for_all_multivectors(omega, [&](const Indices& v) {
    return wedge(contract_coordinates(v, omega), omega).is_zero();
  });
}

bool check_integrability(const DiffForm& omega) {
  DiffForm d = exterior_derivative(omega);
  return for_all_multivectors(omega, [&](const Indices& v) {
    return wedge(contract_coordinates(v, omega), d).is_zero();
  });
}

bool involutivity_check(const DegreeData& dd, const std::vector<VectorField>& fields) {
  const DiffForm omega = phi(fields, radial_fields(dd), dd);
  if (omega.q() == 0) return true;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i + 1; j < fields.size(); ++j)
      if (!contract(lie_bracket(fields[i], fields[j]), omega).is_zero()) return false;
  return true;
}

MultiDegree euler_coefficients(SplitData& sd, const DegreeData& dd) {
  const DiffForm d = exterior_derivative(sd.omega);
  const auto radials = radial_fields(dd);
  MultiDegree c = dd.zero();
  for (std::size_t t = 0; t < radials.size(); ++t) {
    auto r = integer_ratio(contract(radials[t], d), sd.omega);
    if (!r || r->get_den() != 1)
      throw DomainError("foliation.euler", "iota_R" + std::to_string(t + 1) + " d omega is not an integer multiple of omega");
    c[t] = r->get_num().get_si();
  }
  if (c != degree_of_form(sd.omega, dd))
    throw DomainError("foliation.euler", "Euler coefficients " + c.str() + " differ from the degree of omega");
  sd.euler = c;
  return c;
}

bool lemma_diff_identity_holds(const SplitData& sd, const DegreeData& dd) {
  SplitData tmp = sd;
  const MultiDegree c = euler_coefficients(tmp, dd);
  const auto radials = radial_fields(dd);
  const std::size_t k = sd.fields.size();
  DiffForm rhs(sd.omega.nvars(), sd.omega.q() + 1);
  for (std::size_t t = 0; t < radials.size(); ++t) {
    if (c[t] == 0) continue;
    std::vector<VectorField> rest;
    for (std::size_t u = 0; u < radials.size(); ++u)
      if (u != t) rest.push_back(radials[u]);
    DiffForm term = phi(sd.fields, rest, dd);
    // (-1)^(k + t - 1) with 1-based t
    const bool negative = (k + t) % 2 == 1;
    rhs += Rational(negative ? -c[t] : c[t]) * term;
  }
  return exterior_derivative(sd.omega) == rhs;
}

LemmaDiffResult normalize_lemma_diff(const SplitData& sd, const DegreeData& dd) {
  LemmaDiffResult out;
  SplitData base = sd;
  const MultiDegree c = euler_coefficients(base, dd);
  const DiffForm d = exterior_derivative(sd.omega);
  const std::size_t k = sd.fields.size();
  bool any = false;
  for (std::size_t i = 0; i < k; ++i) {
    auto g = form_quotient(contract(sd.fields[i], d), sd.omega);
    if (!g)
      throw DomainError("foliation.exact_division",
                        "iota_X" + std::to_string(i + 1) + " d omega is not a polynomial multiple of omega");
    // iota_{X_i} d omega = (-1)^(i+1) f_i omega, 1-based i
    out.f.push_back(i % 2 == 0 ? *g : -*g);
    any = any || !g->is_zero();
  }
  out.b.assign(dd.s(), Rational(0));
  auto lead = std::find_if(c.values().begin(), c.values().end(), [](std::int64_t v) { return v != 0; });
  if (lead != c.values().end()) {
    out.b[static_cast<std::size_t>(lead - c.values().begin())] = Rational(1) / Rational(*lead);
  } else if (any) {
    throw DomainError("foliation.lemma_diff_system", "sum_t c_t b_t = 1 has no solution since c = 0");
  }
  if (!any) {
    out.data = base;
    if (!lemma_diff_identity_holds(out.data, dd))
      throw DomainError("foliation.lemma_diff_check", "identity fails for already normalized fields");
    return out;
  }
  const auto radials = radial_fields(dd);
  const std::size_t N = dd.nvars();
  VectorField correction(N);
  for (std::size_t t = 0; t < radials.size(); ++t)
    if (out.b[t] != 0) correction += out.b[t] * radials[t];
  std::vector<VectorField> fields;
  for (std::size_t i = 0; i < k; ++i) {
    // X_i + (-1)^i f_i sum_t b_t R_t, 1-based i
    VectorField delta = out.f[i] * correction;
    VectorField x = i % 2 == 0 ? sd.fields[i] - delta : sd.fields[i] + delta;
    fields.push_back(VectorField::graded(dd, x.components(), sd.fields[i].degree()));
  }
  out.data = build_omega(dd, std::move(fields));
  if (!(out.data.omega == sd.omega))
    throw DomainError("foliation.lemma_diff_check", "normalized fields changed omega");
  euler_coefficients(out.data, dd);
  if (!lemma_diff_identity_holds(out.data, dd))
    throw DomainError("foliation.lemma_diff_check", "d omega identity fails after normalization");
  return out;
}

Ideal singular_ideal(const SplitData& sd, const DegreeData& dd) {
  const std::size_t N = dd.nvars();
  std::vector<VectorField> cols = sd.fields;
  for (auto& r : radial_fields(dd)) cols.push_back(r);
  const std::size_t m = cols.size();
  std::map<std::uint64_t, Polynomial> memo;
  // determinant of rows `mask` against the last popcount(mask) columns
  auto det = [&](auto&& self, std::uint64_t mask) -> Polynomial {
    if (mask == 0) return Polynomial::constant(N, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    const std::size_t p = static_cast<std::size_t>(__builtin_popcountll(mask));
    const std::size_t col = m - p;
    Polynomial acc(N);
    std::size_t a = 0;
    for (std::size_t r = 0; r < N; ++r) {
      if (!(mask >> r & 1u)) continue;
      const Polynomial& entry = cols[col][r];
      if (!entry.is_zero()) {
        Polynomial t = entry * self(self, mask & ~(std::uint64_t{1} << r));
        if (a % 2 == 0) acc += t;
        else acc -= t;
      }
      ++a;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  std::vector<Polynomial> minors;
  for_each_subset(N, m, [&](const Indices& rows) {
    std::uint64_t mask = 0;
    for (auto r : rows) mask |= std::uint64_t{1} << r;
    Polynomial mnr = det(det, mask);
    Indices J;
    for (std::size_t i = 0; i < N; ++i)
      if (!(mask >> i & 1u)) J.push_back(i);
    Polynomial coeff = sd.omega.coefficient(J);
    if (!(coeff == mnr) && !(coeff == -mnr))
      throw DomainError("foliation.minors", "coefficient of omega differs from the complementary minor");
    if (!mnr.is_zero()) minors.push_back(std::move(mnr));
  });
  return Ideal(N, std::move(minors));
}

bool kupka_test(const DiffForm& omega, const std::vector<GaussianRational>& p, const Fan& fan) {
  if (p.size() != omega.nvars()) throw DomainError("coxcalc.ring", "point has the wrong number of coordinates");
  for (const auto& c : primitive_collections(fan))
    if (std::all_of(c.begin(), c.end(), [&](std::size_t i) { return p[i].is_zero(); }))
      throw DomainError("foliation.kupka_irrelevant", "the point lies in the irrelevant locus");
  for (const auto& [J, v] : omega.evaluate(p))
    if (!v.is_zero()) throw DomainError("foliation.kupka_not_singular", "omega does not vanish at the point");
  for (const auto& [J, v] : exterior_derivative(omega).evaluate(p))
    if (!v.is_zero()) return true;
  return false;
}

bool kupka_test(const DiffForm& omega, const RatVector& p, const Fan& fan) {
  return kupka_test(omega, std::vector<GaussianRational>(p.begin(), p.end()), fan);
}

DiffForm dPhi(const SplitData& sd, const DegreeData& dd, const std::vector<VectorField>& directions) {
  const std::size_t k = sd.fields.size();
  if (directions.size() != k) throw DomainError("foliation.dphi_degree", "need one direction per field");
  const auto radials = radial_fields(dd);
  DiffForm out(dd.nvars(), sd.q);
  for (std::size_t j = 0; j < k; ++j) {
    const VectorField& z = directions[j];
    if (z.is_zero()) continue;
    try {
      (void)VectorField::graded(dd, z.components(), sd.fields[j].degree());
    } catch (const DomainError& e) {
      throw DomainError("foliation.dphi_degree", "direction " + std::to_string(j + 1) + ": " + e.what());
    }
    std::vector<VectorField> f = sd.fields;
    f[j] = z;
    out += phi(f, radials, dd);
  }
  out.set_degree(sd.cox_degree);
  return out;
}

namespace {

// homogeneous q-forms of degree beta as (basis element, monomial) pairs
std::vector<std::pair<Indices, Exponents>> form_basis(const DegreeData& dd, std::size_t q, const MultiDegree& beta) {
  std::vector<std::pair<Indices, Exponents>> out;
  for_each_subset(dd.nvars(), q, [&](const Indices& J) {
    MultiDegree rest = beta;
    for (auto j : J) rest -= dd.var_degree(j);
    for (auto& e : graded_piece_basis(dd, rest)) out.emplace_back(J, std::move(e));
  });
  return out;
}

}  // namespace

std::vector<DiffForm> deformation_space(const SplitData& sd, const DegreeData& dd, const DeformationOptions& options) {
  const std::size_t N = dd.nvars();
  const std::size_t q = sd.q;
  const auto basis = form_basis(dd, q, sd.cox_degree);
  const auto radials = radial_fields(dd);
  const DiffForm& omega = sd.omega;
  const DiffForm domega = exterior_derivative(omega);
  const bool integrable = check_integrability(omega);
  std::vector<Indices> multivectors;
  for_each_subset(N, q - 1, [&](const Indices& v) { multivectors.push_back(v); });
  std::vector<DiffForm> omega_v;
  for (const auto& v : multivectors) omega_v.push_back(contract_coordinates(v, omega));

  FormCoordinates coords;
  std::vector<SparseColumn> columns;
  for (const auto& [J, e] : basis) {
    const DiffForm eta = DiffForm::basis(N, J, Polynomial::monomial(e));
    const DiffForm deta = exterior_derivative(eta);
    SparseColumn col;
    auto push = [&](std::size_t tag, const DiffForm& w) {
      for (auto& entry : coords.add(tag, w)) col.push_back(std::move(entry));
    };
    std::size_t tag = 0;
    for (const auto& r : radials) push(tag++, contract(r, eta));
    for (std::size_t a = 0; a < multivectors.size(); ++a) {
      DiffForm eta_v = contract_coordinates(multivectors[a], eta);
      if (q >= 2) push(tag, wedge(eta_v, omega) + wedge(omega_v[a], eta));
      ++tag;
      if (integrable && options.integrability == TangentCondition::Linearized)
        push(tag, wedge(eta_v, domega) + wedge(omega_v[a], deta));
      ++tag;
    }
    if (integrable && options.integrability == TangentCondition::ClosedDifferentials) push(tag, wedge(domega, deta));
    columns.push_back(std::move(col));
  }
  const RatMatrix system = dense(columns, coords.index.size(), true);
  std::vector<DiffForm> out;
  for (const auto& v : nullspace(system)) {
    DiffForm eta(N, q);
    for (std::size_t u = 0; u < basis.size(); ++u)
      if (v[u] != 0) eta.add_term(basis[u].first, Polynomial::monomial(basis[u].second, v[u]));
    eta.set_degree(sd.cox_degree);
    out.push_back(std::move(eta));
  }
  return out;
}

std::optional<std::size_t> kupka_complement_codim(const SplitData& sd, const DegreeData& dd, const Fan& fan) {
  Ideal s = singular_ideal(sd, dd);
  std::vector<Polynomial> gens = s.generators();
  const DiffForm domega = exterior_derivative(sd.omega);
  for (const auto& [J, f] : domega.terms()) gens.push_back(f);
  return codim_in_variety(Ideal(dd.nvars(), std::move(gens)), fan);
}

StabilityReport stability_gap(const SplitData& sd, const DegreeData& dd, const Fan& fan,
                              const DeformationOptions& options) {
  StabilityReport rep;
  if (sd.q >= 2) rep.hypothesis_codim = codim_in_variety(singular_ideal(sd, dd), fan);
  else rep.hypothesis_codim = kupka_complement_codim(sd, dd, fan);
  rep.hypothesis_holds = !rep.hypothesis_codim || *rep.hypothesis_codim >= 3;

  const auto def = deformation_space(sd, dd, options);
  rep.deformation_dim = def.size();

  const std::size_t N = dd.nvars();
  const auto radials = radial_fields(dd);
  FormCoordinates coords;
  std::vector<SparseColumn> image;
  for (std::size_t j = 0; j < sd.fields.size(); ++j) {
    const MultiDegree& dj = *sd.fields[j].degree();
    for (std::size_t m = 0; m < N; ++m)
      for (const auto& e : graded_piece_basis(dd, dj + dd.var_degree(m))) {
        std::vector<Polynomial> comp(N, Polynomial(N));
        comp[m] = Polynomial::monomial(e);
        std::vector<VectorField> f = sd.fields;
        f[j] = VectorField(std::move(comp));
        image.push_back(coords.add(0, phi(f, radials, dd)));
      }
  }
  const SparseColumn omega_vec = coords.add(0, sd.omega);
  std::vector<SparseColumn> defs;
  for (const auto& eta : def) defs.push_back(coords.add(0, eta));
  const std::size_t dim = coords.index.size();

  const std::size_t image_only = rank_of(image, dim);
  image.push_back(omega_vec);
  rep.full_image_rank = rank_of(image, dim);
  rep.omega_in_image = rep.full_image_rank == image_only;
  std::vector<SparseColumn> both = defs;
  both.insert(both.end(), image.begin(), image.end());
  const std::size_t sum_rank = rank_of(both, dim);
  rep.image_in_deformations = sum_rank == rep.deformation_dim;
  // directions Z with dPhi(Z) in the deformation space span image ∩ deformations
  rep.image_rank = rep.deformation_dim + rep.full_image_rank - sum_rank;
  rep.gap = static_cast<long>(rep.deformation_dim) - static_cast<long>(rep.image_rank);
  return rep;
}

}  // namespace toricfol
