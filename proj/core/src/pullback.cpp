#include "toricfol/pullback.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "toricfol/error.hpp"

namespace toricfol {

namespace {

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

Polynomial linear_polynomial(std::size_t nvars, const RatVector& coeffs) {
  Polynomial p(nvars);
  for (std::size_t k = 0; k < nvars; ++k)
    if (coeffs[k] != 0) p.add_term([&] {
        Exponents e(nvars, 0);
        e[k] = 1;
        return e;
      }(), coeffs[k]);
  return p;
}

RatVector linear_coefficients(const Polynomial& p) {
  RatVector v(p.nvars(), 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) v[k] = c;
  return v;
}

// integer phi with phi * target = source, if one exists
std::optional<IntMatrix> solve_pic_map(const IntMatrix& target, const IntMatrix& source) {
  const std::size_t sS = target.rows(), s = source.rows(), m = target.cols();
  RatMatrix At = to_rational(target).transpose();  // m x sS
  IntMatrix phi(s, sS);
  for (std::size_t t = 0; t < s; ++t) {
    RatVector b(m);
    for (std::size_t r = 0; r < m; ++r) b[r] = source(t, r);
    auto x = solve(At, b);
    if (!x) return std::nullopt;
    for (std::size_t u = 0; u < sS; ++u) {
      if ((*x)[u].get_den() != 1) return std::nullopt;
      phi(t, u) = (*x)[u].get_num();
    }
  }
  if (!(phi * target == source)) return std::nullopt;
  return phi;
}

// all subsets of size k of `items`, lexicographic
void for_each_choice(const std::vector<std::size_t>& items, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == k) {
      fn(pick);
      return;
    }
    for (std::size_t i = start; i + (k - pick.size()) <= items.size(); ++i) {
      pick.push_back(items[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

// constant * monomial supported on `allowed`, as (is_valid)
bool is_scaled_monomial(const Polynomial& f, const std::vector<std::size_t>& allowed) {
  if (f.num_terms() != 1) return false;
  const auto& e = f.terms().begin()->first;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] && std::find(allowed.begin(), allowed.end(), i) == allowed.end()) return false;
  return true;
}

std::optional<Polynomial> form_ratio(const DiffForm& num, const DiffForm& den) {
  if (den.is_zero() || num.is_zero()) return std::nullopt;
  const auto& [J, d] = *den.terms().begin();
  auto g = num.coefficient(J).divide_exact(d);
  if (!g || !(*g * den == num)) return std::nullopt;
  return g;
}

}  // namespace

MultiDegree EquivariantProjection::push_degree(const MultiDegree& target_degree) const {
  MultiDegree out(pic_map.rows());
  for (std::size_t t = 0; t < pic_map.rows(); ++t) {
    mpz_class acc = 0;
    for (std::size_t u = 0; u < pic_map.cols(); ++u) acc += pic_map(t, u) * target_degree[u];
    out[t] = acc.get_si();
  }
  return out;
}

EquivariantProjection make_projection(const DegreeData& dd, const Fan& fan, const RaySet& S_in,
                                      const std::map<std::size_t, LinearForm>& operators,
                                      const ProjectionOptions& options) {
  const std::size_t N = dd.nvars();
  RaySet S = S_in;
  std::sort(S.begin(), S.end());
  if (S.empty() || !fan.is_cone(S)) throw DomainError("pullback.cone", "S does not span a cone of the fan");
  EquivariantProjection p;
  p.S = S;
  p.quotient = star_quotient(fan, S);
  p.J = p.quotient.ray_correspondence;
  const std::size_t n = fan.dim();
  if (options.strict_mode) {
    for (auto i : S)
      if (!is_maximal(dd, i))
        throw DomainError("pullback.maximal", "D" + one_based(i) + " is not a maximal divisor");
    if (n - S.size() < 2) throw DomainError("pullback.dimension", "D_S has dimension < 2");
  }
  for (std::size_t j = 0; j < N; ++j)
    if (!std::binary_search(S.begin(), S.end(), j) && std::find(p.J.begin(), p.J.end(), j) == p.J.end())
      p.W.push_back(j);
  for (const auto& [j, lf] : operators) {
    if (j >= N) throw DomainError("pullback.degree", "operator index " + one_based(j) + " out of range");
    if (std::binary_search(S.begin(), S.end(), j))
      throw DomainError("pullback.operator_on_S", "operator given for D" + one_based(j) + " with j in S");
  }
  SpanBuilder span(N);
  for (auto j : p.J) {
    RatVector coeff(N, 0);
    auto it = operators.find(j);
    if (it == operators.end()) {
      coeff[j] = 1;
    } else {
      for (const auto& [k, c] : it->second) {
        if (k >= N) throw DomainError("pullback.degree", "variable index " + one_based(k) + " out of range");
        if (dd.var_degree(k) != dd.var_degree(j))
          throw DomainError("pullback.degree", "T" + one_based(j) + " uses x" + one_based(k) + " of degree " +
                                                   dd.var_degree(k).str() + " instead of " + dd.var_degree(j).str());
        coeff[k] += c;
      }
    }
    if (!span.add(coeff)) throw DomainError("pullback.dependent", "T" + one_based(j) + " depends on earlier operators");
    p.operators.push_back(linear_polynomial(N, coeff));
  }
  // adapted coordinates: operators, then unit rows within each class
  p.adapted = RatMatrix(N, N);
  for (std::size_t r = 0; r < p.J.size(); ++r) {
    RatVector c = linear_coefficients(p.operators[r]);
    for (std::size_t k = 0; k < N; ++k) p.adapted(p.J[r], k) = c[k];
  }
  std::vector<std::size_t> slots = S;
  slots.insert(slots.end(), p.W.begin(), p.W.end());
  std::sort(slots.begin(), slots.end());
  for (auto j : slots) {
    std::vector<std::size_t> tries{j};
    for (auto k : equivalence_class(dd, j))
      if (k != j) tries.push_back(k);
    bool placed = false;
    for (auto k : tries) {
      RatVector e(N, 0);
      e[k] = 1;
      if (span.add(e)) {
        p.adapted(j, k) = 1;
        placed = true;
        break;
      }
    }
    if (!placed) throw DomainError("pullback.dependent", "operators cannot be completed to adapted coordinates");
  }
  p.target_grading = grading(p.quotient.fan);
  IntMatrix source(dd.s(), p.J.size());
  for (std::size_t r = 0; r < p.J.size(); ++r)
    for (std::size_t t = 0; t < dd.s(); ++t) source(t, r) = dd.var_degree(p.J[r])[t];
  auto phi = solve_pic_map(p.target_grading.degree_matrix(), source);
  if (!phi) throw DomainError("pullback.pic_map", "no homomorphism Pic(D_S) -> Pic(X) matches the operator degrees");
  p.pic_map = *phi;

  std::vector<Polynomial> gens{Polynomial::constant(N, 1)};
  for (const auto& c : primitive_collections(p.quotient.fan)) {
    std::vector<Polynomial> next;
    for (const auto& g : gens)
      for (auto r : c) next.push_back(g * p.operators[r]);
    gens = std::move(next);
  }
  p.indeterminacy = Ideal(N, std::move(gens));
  p.indeterminacy_codim = codim_in_variety(p.indeterminacy, fan);
  if (p.indeterminacy_codim && *p.indeterminacy_codim < 2)
    throw DomainError("pullback.indeterminacy", "indeterminacy locus has codimension " +
                                                    std::to_string(*p.indeterminacy_codim));
  return p;
}

DiffForm pullback_form(const EquivariantProjection& p, const DegreeData& dd, const DiffForm& omega) {
  const std::size_t N = dd.nvars();
  const std::size_t m = p.J.size();
  if (omega.nvars() != m) throw DomainError("coxcalc.ring", "form does not live on the target");
  std::vector<DiffForm> dT;
  for (const auto& t : p.operators) dT.push_back(exterior_derivative(DiffForm::function(t)));
  DiffForm out(N, omega.q());
  for (const auto& [J, f] : omega.terms()) {
    DiffForm term = DiffForm::function(f.substitute(p.operators));
    for (auto r : J) term = wedge(term, dT[r]);
    out += term;
  }
  std::optional<MultiDegree> td = omega.degree();
  if (!td && !omega.is_zero()) td = degree_of_form(omega, p.target_grading);
  if (td) {
    const MultiDegree d = p.push_degree(*td);
    if (out.is_zero()) out.set_degree(d);
    else out = out.graded(dd, d);
  }
  return out;
}

namespace {

std::vector<VectorField> fiber_fields_of(const EquivariantProjection& p, const DegreeData& dd) {
  const std::size_t N = dd.nvars();
  auto inv = inverse(p.adapted);
  std::vector<VectorField> out;
  for (auto i : p.S) {
    std::vector<Polynomial> c;
    for (std::size_t k = 0; k < N; ++k) c.push_back(Polynomial::constant(N, (*inv)(k, i)));
    out.push_back(VectorField::graded(dd, std::move(c), -dd.var_degree(i)));
  }
  return out;
}

}  // namespace

PullbackSplitting pullback_splitting(const EquivariantProjection& p, const DegreeData& dd,
                                     const std::vector<MultiDegree>& target_alphas) {
  PullbackSplitting out;
  for (const auto& a : target_alphas) out.summands.push_back(p.push_degree(a));
  for (auto i : p.S) out.summands.push_back(dd.var_degree(i));
  out.fiber_fields = fiber_fields_of(p, dd);
  return out;
}

PulledBackSplitData pullback_split_data(const EquivariantProjection& p, const DegreeData& dd,
                                        const SplitData& target) {
  const std::size_t N = dd.nvars();
  const auto inv = *inverse(p.adapted);
  std::vector<VectorField> fields;
  for (const auto& y : target.fields) {
    std::vector<Polynomial> lifted;
    for (std::size_t r = 0; r < p.J.size(); ++r) lifted.push_back(y[r].substitute(p.operators));
    std::vector<Polynomial> c(N, Polynomial(N));
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t r = 0; r < p.J.size(); ++r)
        if (inv(k, p.J[r]) != 0) c[k] += lifted[r] * inv(k, p.J[r]);
    fields.push_back(VectorField::graded(dd, std::move(c), p.push_degree(*y.degree())));
  }
  for (auto& f : fiber_fields_of(p, dd)) fields.push_back(std::move(f));
  PulledBackSplitData out{build_omega(dd, std::move(fields)), Polynomial(N)};
  auto mu = form_ratio(out.data.omega, pullback_form(p, dd, target.omega));
  if (!mu || !is_scaled_monomial(*mu, p.W))
    throw DomainError("pullback.split_mismatch", "lifted fields do not present the pulled back form");
  out.factor = *mu;
  return out;
}

std::vector<Recognition> recognize_pullback_all(const SplitData& sd, const DegreeData& dd, const Fan& fan) {
  const std::size_t N = dd.nvars();
  const std::size_t n = fan.dim();
  const auto maximal = maximal_divisors(dd);
  // fiber candidates: fields of degree -deg(x_i) with i maximal
  struct Candidate {
    std::size_t field;
    std::vector<std::size_t> block;
  };
  std::vector<Candidate> cands;
  for (std::size_t l = 0; l < sd.fields.size(); ++l) {
    const auto& deg = sd.fields[l].degree();
    if (!deg) continue;
    for (auto i : maximal)
      if (*deg == -dd.var_degree(i)) {
        cands.push_back({l, equivalence_class(dd, i)});
        break;
      }
  }
  std::vector<Recognition> out;
  if (cands.empty()) return out;
  // constant vectors, supported on their blocks by homogeneity
  auto entry = [&](const Candidate& c, std::size_t k) {
    auto v = sd.fields[c.field][k].as_constant();
    if (!v) throw DomainError("pullback.rank_drop", "fiber candidate is not a constant field");
    return *v;
  };
  // group by block and check independence inside each block
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_block;
  for (std::size_t a = 0; a < cands.size(); ++a) by_block[cands[a].block].push_back(a);
  for (const auto& [block, members] : by_block) {
    SpanBuilder sb(block.size());
    for (auto a : members) {
      RatVector v;
      for (auto k : block) v.push_back(entry(cands[a], k));
      if (!sb.add(v)) throw DomainError("pullback.rank_drop", "fiber fields are dependent in a class");
    }
  }
  std::vector<std::size_t> all(cands.size());
  for (std::size_t a = 0; a < all.size(); ++a) all[a] = a;
  bool dimension_blocked = false;
  std::set<RaySet> seen;
  for (std::size_t size = std::min(cands.size(), n); size >= 1; --size) {
    for_each_choice(all, size, [&](const std::vector<std::size_t>& pick) {
      // per block: the chosen fields and every choice of rows
      std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
      for (const auto& [block, members] : by_block) {
        std::vector<std::size_t> chosen;
        for (auto a : pick)
          if (std::find(members.begin(), members.end(), a) != members.end()) chosen.push_back(a);
        if (!chosen.empty()) groups.emplace_back(block, chosen);
      }
      std::vector<std::vector<std::size_t>> rows(groups.size());
      auto rec = [&](auto&& self, std::size_t g) -> void {
        if (g == groups.size()) {
          RaySet S;
          for (const auto& r : rows) S.insert(S.end(), r.begin(), r.end());
          std::sort(S.begin(), S.end());
          if (!fan.is_cone(S)) return;
          if (n - S.size() < 2) {
            dimension_blocked = true;
            return;
          }
          // coordinate change x = B x' with columns F_l at S, e_k elsewhere
          RatMatrix B = RatMatrix::identity(N);
          std::vector<std::size_t> fiber;
          for (std::size_t gi = 0; gi < groups.size(); ++gi)
            for (std::size_t a = 0; a < rows[gi].size(); ++a) {
              const auto& cand = cands[groups[gi].second[a]];
              fiber.push_back(cand.field);
              for (std::size_t k = 0; k < N; ++k) B(k, rows[gi][a]) = entry(cand, k);
            }
          auto Binv = inverse(B);
          if (!Binv) return;
          StarQuotient sq = star_quotient(fan, S);
          const auto& Jv = sq.ray_correspondence;
          const std::size_t m = Jv.size();
          std::vector<std::size_t> W;
          for (std::size_t j = 0; j < N; ++j)
            if (!std::binary_search(S.begin(), S.end(), j) && std::find(Jv.begin(), Jv.end(), j) == Jv.end())
              W.push_back(j);
          // images of x: x_k = sum_l B_kl x'_l with x'_S = 0, x'_W = 1, x'_J[r] = y_r
          std::vector<Polynomial> img(N, Polynomial(m));
          for (std::size_t k = 0; k < N; ++k)
            for (std::size_t l = 0; l < N; ++l) {
              if (B(k, l) == 0 || std::binary_search(S.begin(), S.end(), l)) continue;
              auto it = std::find(Jv.begin(), Jv.end(), l);
              if (it != Jv.end())
                img[k] += Polynomial::variable(m, static_cast<std::size_t>(it - Jv.begin())) * B(k, l);
              else
                img[k] += Polynomial::constant(m, B(k, l));
            }
          DegreeData ddS;
          try {
            ddS = grading(sq.fan);
          } catch (const DomainError&) {
            return;
          }
          std::vector<VectorField> targets;
          for (std::size_t l = 0; l < sd.fields.size(); ++l) {
            if (std::find(fiber.begin(), fiber.end(), l) != fiber.end()) continue;
            std::vector<Polynomial> y(m, Polynomial(m));
            for (std::size_t r = 0; r < m; ++r)
              for (std::size_t k = 0; k < N; ++k)
                if ((*Binv)(Jv[r], k) != 0) y[r] += sd.fields[l][k].substitute(img) * (*Binv)(Jv[r], k);
            try {
              targets.push_back(VectorField::graded(ddS, std::move(y)));
            } catch (const DomainError&) {
              return;
            }
          }
          std::map<std::size_t, LinearForm> ops;
          for (auto j : Jv) {
            LinearForm lf;
            for (std::size_t k = 0; k < N; ++k)
              if ((*Binv)(j, k) != 0) lf.emplace_back(k, (*Binv)(j, k));
            ops.emplace(j, std::move(lf));
          }
          try {
            Recognition rec_out{make_projection(dd, fan, S, ops), build_omega(ddS, targets), fiber, Polynomial(N)};
            auto ratio = form_ratio(sd.omega, pullback_form(rec_out.projection, dd, rec_out.target.omega));
            if (!ratio || !is_scaled_monomial(*ratio, W)) return;
            // rescale the target so that the factor is a bare monomial
            Rational c = ratio->leading_coefficient();
            if (c != 1) {
              if (targets.empty()) return;
              targets[0] = c * targets[0];
              rec_out.target = build_omega(ddS, targets);
            }
            rec_out.factor = Polynomial::monomial(ratio->leading_exponents());
            if (!(rec_out.factor * pullback_form(rec_out.projection, dd, rec_out.target.omega) == sd.omega)) return;
            if (seen.insert(S).second) out.push_back(std::move(rec_out));
          } catch (const DomainError&) {
            return;
          }
          return;
        }
        const auto& [block, chosen] = groups[g];
        for_each_choice(block, chosen.size(), [&](const std::vector<std::size_t>& rs) {
          RatMatrix minor(rs.size(), rs.size());
          for (std::size_t a = 0; a < chosen.size(); ++a)
            for (std::size_t b = 0; b < rs.size(); ++b) minor(b, a) = entry(cands[chosen[a]], rs[b]);
          if (determinant(minor) == 0) return;
          rows[g] = rs;
          self(self, g + 1);
        });
      };
      rec(rec, 0);
    });
  }
  if (out.empty() && dimension_blocked)
    throw DomainError("pullback.dimension", "every admissible S leaves D_S of dimension < 2");
  return out;
}

std::optional<Recognition> recognize_pullback(const SplitData& sd, const DegreeData& dd, const Fan& fan) {
  auto all = recognize_pullback_all(sd, dd, fan);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

}  // namespace toricfol
