#include "toricfol/picard.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "toricfol/error.hpp"

namespace toricfol {

bool MultiDegree::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](std::int64_t x) { return x == 0; });
}

MultiDegree& MultiDegree::operator+=(const MultiDegree& o) {
  if (o.v_.size() != v_.size()) throw DomainError("picard.degree_length", "adding degrees of different rank");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

MultiDegree& MultiDegree::operator-=(const MultiDegree& o) {
  if (o.v_.size() != v_.size()) throw DomainError("picard.degree_length", "subtracting degrees of different rank");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

MultiDegree MultiDegree::operator-() const {
  MultiDegree out = *this;
  for (auto& x : out.v_) x = -x;
  return out;
}

MultiDegree operator*(std::int64_t k, MultiDegree a) {
  for (auto& x : a.v_) x *= k;
  return a;
}

RatVector MultiDegree::to_rational() const {
  RatVector out;
  for (auto x : v_) out.emplace_back(static_cast<long>(x));
  return out;
}

std::string MultiDegree::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < v_.size(); ++i) s += (i ? "," : "") + std::to_string(v_[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------

namespace {

RatVector primitive_normal(RatVector v) {
  // clear denominators, divide by content, so the normal is canonical up to sign
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  Integer g = 0;
  for (auto& x : v) {
    x *= l;
    x.canonicalize();
    g = gcd(g, Integer(x.get_num()));
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  return v;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// calls f(subset) for each k-subset of {0..n-1} in lex order; stops if f returns false
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

RationalCone make_cone(std::size_t dim, std::vector<RatVector> generators) {
  RationalCone cone;
  cone.dim = dim;
  for (const auto& g : generators)
    if (g.size() != dim) throw DomainError("picard.dimension", "generator of wrong length");
  cone.generators = std::move(generators);
  const auto& G = cone.generators;

  RatMatrix gm(G.size(), dim);
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) gm(i, j) = G[i][j];
  if (rank(gm) != dim) throw DomainError("picard.full_dimensional", "cone generators do not span the space");

  std::set<RatVector> facets;
  for_each_subset(G.size(), dim - 1, [&](const std::vector<std::size_t>& sub) {
    RatMatrix m(sub.size(), dim);
    for (std::size_t r = 0; r < sub.size(); ++r)
      for (std::size_t j = 0; j < dim; ++j) m(r, j) = G[sub[r]][j];
    auto ns = nullspace(m);
    if (ns.size() != 1) return true;
    RatVector phi = primitive_normal(ns.front());
    bool pos = false, neg = false;
    for (const auto& g : G) {
      Rational v = dot(phi, g);
      if (v > 0) pos = true;
      if (v < 0) neg = true;
    }
    if (pos && neg) return true;
    if (neg)
      for (auto& x : phi) x = -x;
    facets.insert(phi);
    return true;
  });
  cone.facets.assign(facets.begin(), facets.end());

  if (cone.facets.empty()) {
    cone.strictly_convex = false;
  } else {
    RatMatrix fm(cone.facets.size(), dim);
    for (std::size_t i = 0; i < cone.facets.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) fm(i, j) = cone.facets[i][j];
    cone.strictly_convex = rank(fm) == dim;
  }
  return cone;
}

bool cone_contains(const RationalCone& cone, const RatVector& v) {
  if (v.size() != cone.dim) throw DomainError("picard.dimension", "vector length does not match cone dimension");
  return std::all_of(cone.facets.begin(), cone.facets.end(), [&](const RatVector& phi) { return dot(phi, v) >= 0; });
}

bool cone_contains_by_combination(const RationalCone& cone, const RatVector& v) {
  if (v.size() != cone.dim) throw DomainError("picard.dimension", "vector length does not match cone dimension");
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) return true;
  const auto& G = cone.generators;
  bool found = false;
  for (std::size_t k = 1; k <= cone.dim && !found; ++k)
    for_each_subset(G.size(), k, [&](const std::vector<std::size_t>& sub) {
      RatMatrix m(cone.dim, sub.size());
      for (std::size_t c = 0; c < sub.size(); ++c)
        for (std::size_t r = 0; r < cone.dim; ++r) m(r, c) = G[sub[c]][r];
      if (rank(m) != sub.size()) return true;
      auto x = solve(m, v);
      if (x && std::all_of(x->begin(), x->end(), [](const Rational& c) { return c >= 0; })) {
        found = true;
        return false;
      }
      return true;
    });
  return found;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw DomainError("picard.degree_range", "degree entry exceeds 64-bit range");
  return z.get_si();
}

}  // namespace

DegreeData::DegreeData(IntMatrix degree_matrix) : s_(degree_matrix.rows()), matrix_(std::move(degree_matrix)) {
  for (std::size_t i = 0; i < matrix_.cols(); ++i) {
    MultiDegree d(s_);
    for (std::size_t t = 0; t < s_; ++t) d[t] = to_i64(matrix_(t, i));
    columns_.push_back(d);
  }
  // columns must generate Z^s: the SNF of the degree matrix has all factors 1
  SmithForm snf = smith_normal_form(matrix_);
  auto f = snf.invariant_factors();
  if (snf.rank != s_ || std::any_of(f.begin(), f.end(), [](const Integer& d) { return d != 1; }))
    throw DomainError("picard.surjective", "degree columns do not generate Z^s");
  std::vector<RatVector> gens;
  for (const auto& c : columns_) gens.push_back(c.to_rational());
  eff_ = make_cone(s_, std::move(gens));
}

MultiDegree DegreeData::canonical() const {
  MultiDegree k(s_);
  for (const auto& c : columns_) k -= c;
  return k;
}

std::vector<std::int64_t> DegreeData::weights(std::size_t t) const {
  std::vector<std::int64_t> w;
  for (const auto& c : columns_) w.push_back(c[t]);
  return w;
}

DegreeData grading(const Fan& fan) {
  if (fan.num_rays() == 0) throw DomainError("picard.no_rays", "fan has no rays");
  IntMatrix P = fan.pairing_matrix();
  Cokernel ck = cokernel(P);
  if (!ck.torsion.empty()) {
    std::string t;
    for (const auto& d : ck.torsion) t += (t.empty() ? "" : ",") + d.get_str();
    throw DomainError("picard.free", "Pic(X) has torsion with invariants " + t);
  }
  if (ck.free_rank == 0) throw DomainError("picard.free", "Pic(X) is trivial; the fan is not complete");
  IntMatrix deg = hermite_normal_form(ck.projection);
  if (!(deg * P).is_zero() || rank(deg) + rank(P) != fan.num_rays())
    throw DomainError("picard.exactness", "degree matrix does not present the cokernel");
  return DegreeData(std::move(deg));
}

bool precedes(const DegreeData& dd, const MultiDegree& alpha, const MultiDegree& beta) {
  return !cone_contains(dd.effective_cone(), (alpha - beta).to_rational());
}

bool is_maximal(const DegreeData& dd, std::size_t i) {
  const auto& di = dd.var_degree(i);
  for (std::size_t j = 0; j < dd.nvars(); ++j) {
    const auto& dj = dd.var_degree(j);
    if (dj == di) continue;
    if (!precedes(dd, dj, di)) return false;
  }
  return true;
}

std::vector<std::size_t> maximal_divisors_pairwise(const DegreeData& dd) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dd.nvars(); ++i)
    if (is_maximal(dd, i)) out.push_back(i);
  return out;
}

constexpr std::size_t kMaxPermutedFacets = 7;

std::vector<std::size_t> maximal_divisors_lexicographic(const DegreeData& dd) {
  const auto& facets = dd.effective_cone().facets;
  const std::size_t N = dd.nvars();
  const std::size_t m = facets.size();
  // values[k][f] = phi_f([D_k])
  std::vector<RatVector> values(N, RatVector(m));
  for (std::size_t k = 0; k < N; ++k) {
    RatVector d = dd.var_degree(k).to_rational();
    for (std::size_t f = 0; f < m; ++f) values[k][f] = dot(facets[f], d);
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::set<std::size_t> winners;
  auto lex_max = [&] {
    std::size_t best = 0;
    for (std::size_t k = 1; k < N; ++k) {
      for (auto f : order) {
        if (values[k][f] == values[best][f]) continue;
        if (values[k][f] > values[best][f]) best = k;
        break;
      }
    }
    winners.insert(best);
  };
  if (m <= kMaxPermutedFacets) {
    do lex_max();
    while (std::next_permutation(order.begin(), order.end()));
  } else {
    // too many orderings: use every cyclic rotation in both directions
    for (std::size_t r = 0; r < m; ++r) {
      lex_max();
      std::reverse(order.begin(), order.end());
      lex_max();
      std::reverse(order.begin(), order.end());
      std::rotate(order.begin(), order.begin() + 1, order.end());
    }
  }
  std::set<std::size_t> closed;
  for (auto w : winners)
    for (auto j : equivalence_class(dd, w)) closed.insert(j);
  return {closed.begin(), closed.end()};
}

std::vector<std::size_t> maximal_divisors(const DegreeData& dd) {
  auto lex = maximal_divisors_lexicographic(dd);
  auto pair = maximal_divisors_pairwise(dd);
  if (lex != pair || lex.empty()) {
    auto fmt = [](const std::vector<std::size_t>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
      return s + "}";
    };
    throw DomainError("picard.maximal_cross_check",
                      "lexicographic maxima " + fmt(lex) + " differ from pairwise maxima " + fmt(pair));
  }
  return pair;
}

std::vector<std::vector<std::size_t>> equivalence_classes(const DegreeData& dd) {
  std::vector<std::vector<std::size_t>> out;
  std::map<MultiDegree, std::size_t> where;
  for (std::size_t i = 0; i < dd.nvars(); ++i) {
    auto [it, fresh] = where.try_emplace(dd.var_degree(i), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

std::vector<std::size_t> equivalence_class(const DegreeData& dd, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < dd.nvars(); ++j)
    if (dd.var_degree(j) == dd.var_degree(i)) out.push_back(j);
  return out;
}

std::optional<IntMatrix> unimodular_equivalence(const IntMatrix& from, const IntMatrix& to) {
  if (from.rows() != to.rows() || from.cols() != to.cols()) return std::nullopt;
  const std::size_t s = from.rows();
  // pick s independent columns of `from`
  std::vector<std::size_t> cols;
  SpanBuilder span(s);
  for (std::size_t c = 0; c < from.cols() && cols.size() < s; ++c) {
    RatVector v;
    for (std::size_t r = 0; r < s; ++r) v.emplace_back(from(r, c));
    if (span.add(v)) cols.push_back(c);
  }
  if (cols.size() != s) return std::nullopt;
  RatMatrix A(s, s), B(s, s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t r = 0; r < s; ++r) {
      A(r, j) = from(r, cols[j]);
      B(r, j) = to(r, cols[j]);
    }
  auto Ainv = inverse(A);
  if (!Ainv) return std::nullopt;
  RatMatrix Wq = B * *Ainv;
  IntMatrix W(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (Wq(i, j).get_den() != 1) return std::nullopt;
      W(i, j) = Wq(i, j).get_num();
    }
  if (abs(determinant(W)) != 1) return std::nullopt;
  if (!(W * from == to)) return std::nullopt;
  return W;
}

}  // namespace toricfol
