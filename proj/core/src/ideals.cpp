#include "toricfol/ideals.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toricfol/error.hpp"

namespace toricfol {

bool monomial_greater(MonomialOrder order, const Exponents& a, const Exponents& b) {
  if (order == MonomialOrder::DegRevLex) return DegRevLexGreater{}(a, b);
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

struct OrderGreater {
  MonomialOrder order;
  bool operator()(const Exponents& a, const Exponents& b) const { return monomial_greater(order, a, b); }
};

// polynomial with terms in decreasing order for the chosen monomial order
using Terms = std::map<Exponents, Rational, OrderGreater>;

Terms to_terms(const Polynomial& p, MonomialOrder order) {
  Terms t(OrderGreater{order});
  for (const auto& [e, c] : p.terms()) t.emplace(e, c);
  return t;
}

Polynomial from_terms(std::size_t nvars, const Terms& t) {
  Polynomial p(nvars);
  for (const auto& [e, c] : t) p.add_term(e, c);
  return p;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

// acc -= c * x^shift * g
void subtract_multiple(Terms& acc, const Terms& g, const Exponents& shift, const Rational& c) {
  Exponents e(shift.size());
  for (const auto& [ge, gc] : g) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = ge[i] + shift[i];
    auto [it, fresh] = acc.try_emplace(e, -c * gc);
    if (fresh) continue;
    it->second -= c * gc;
    if (it->second == 0) acc.erase(it);
  }
}

void make_monic(Terms& t) {
  if (t.empty()) return;
  Rational lc = t.begin()->second;
  for (auto& [e, c] : t) c /= lc;
}

// full reduction of f by the basis, leading terms first
Terms normal_form(Terms f, const std::vector<Terms>& basis) {
  Terms rest(f.key_comp());
  while (!f.empty()) {
    auto top = f.begin();
    const Exponents& e = top->first;
    const Terms* hit = nullptr;
    for (const auto& g : basis)
      if (!g.empty() && divides(g.begin()->first, e)) {
        hit = &g;
        break;
      }
    if (!hit) {
      rest.insert(*top);
      f.erase(top);
      continue;
    }
    Exponents shift(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) shift[i] = e[i] - hit->begin()->first[i];
    Rational c = top->second / hit->begin()->second;
    subtract_multiple(f, *hit, shift, c);
  }
  return rest;
}

}  // namespace

Exponents leading_exponents(const Polynomial& f, MonomialOrder order) {
  if (f.is_zero()) throw DomainError("ideals.nonzero", "the zero polynomial has no leading term");
  if (order == MonomialOrder::DegRevLex) return f.leading_exponents();
  const Exponents* best = nullptr;
  for (const auto& [e, c] : f.terms())
    if (!best || monomial_greater(order, e, *best)) best = &e;
  return *best;
}

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators, MonomialOrder order) {
  if (generators.empty()) return {};
  const std::size_t n = generators.front().nvars();
  const OrderGreater greater{order};
  std::vector<Terms> G;
  for (const auto& p : generators) {
    if (p.nvars() != n) throw DomainError("coxcalc.ring", "generators live in different rings");
    if (p.is_zero()) continue;
    Terms t = to_terms(p, order);
    make_monic(t);
    G.push_back(std::move(t));
  }
  if (G.empty()) return {};

  // pair queue keyed by (lcm, i, j); the smallest lcm is handled first
  struct PairKey {
    Exponents lcm;
    std::size_t i, j;
  };
  auto pair_less = [greater](const PairKey& a, const PairKey& b) {
    if (a.lcm != b.lcm) return greater(b.lcm, a.lcm);
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::set<PairKey, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> open;
  auto lead = [&](std::size_t k) -> const Exponents& { return G[k].begin()->first; };
  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      queue.insert({lcm(lead(i), lead(k)), i, k});
      open.emplace(i, k);
    }
  };
  for (std::size_t k = 0; k < G.size(); ++k) add_pairs(k);
  auto is_open = [&](std::size_t a, std::size_t b) { return open.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!queue.empty()) {
    PairKey pk = *queue.begin();
    queue.erase(queue.begin());
    open.erase({pk.i, pk.j});
    if (coprime(lead(pk.i), lead(pk.j))) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k)
      chain = k != pk.i && k != pk.j && divides(lead(k), pk.lcm) && !is_open(pk.i, k) && !is_open(pk.j, k);
    if (chain) continue;
    Terms s(greater);
    Exponents si(n), sj(n);
    for (std::size_t v = 0; v < n; ++v) {
      si[v] = pk.lcm[v] - lead(pk.i)[v];
      sj[v] = pk.lcm[v] - lead(pk.j)[v];
    }
    subtract_multiple(s, G[pk.i], si, -1);
    subtract_multiple(s, G[pk.j], sj, 1);
    Terms r = normal_form(std::move(s), G);
    if (r.empty()) continue;
    make_monic(r);
    G.push_back(std::move(r));
    add_pairs(G.size() - 1);
  }

  // minimal basis: drop elements whose leading term is divisible by another's
  std::vector<Terms> minimal;
  for (std::size_t k = 0; k < G.size(); ++k) {
    bool redundant = false;
    for (std::size_t m = 0; m < G.size() && !redundant; ++m) {
      if (m == k || !divides(lead(m), lead(k))) continue;
      redundant = lead(m) != lead(k) || m < k;
    }
    if (!redundant) minimal.push_back(G[k]);
  }
  // interreduce the tails
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Terms> others;
    for (std::size_t m = 0; m < minimal.size(); ++m)
      if (m != k) others.push_back(minimal[m]);
    Terms head(greater);
    head.insert(*minimal[k].begin());
    Terms tail = minimal[k];
    tail.erase(tail.begin());
    Terms reduced = normal_form(std::move(tail), others);
    reduced.insert(*head.begin());
    minimal[k] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const Terms& a, const Terms& b) { return greater(a.begin()->first, b.begin()->first); });
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (const auto& t : minimal) out.push_back(from_terms(n, t));
  return out;
}

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& basis, MonomialOrder order) {
  std::vector<Terms> G;
  for (const auto& g : basis) G.push_back(to_terms(g, order));
  return from_terms(f.nvars(), normal_form(to_terms(f, order), G));
}

int monomial_ideal_dimension(std::size_t nvars, const std::vector<Exponents>& generators) {
  if (nvars > 30) throw DomainError("ideals.size", "too many variables for subset enumeration");
  std::vector<std::uint32_t> supports;
  for (const auto& e : generators) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (e[i]) m |= 1u << i;
    if (m == 0) return -1;
    supports.push_back(m);
  }
  int best = 0;
  const std::uint64_t total = std::uint64_t{1} << nvars;
  for (std::uint64_t u = 0; u < total; ++u) {
    const int size = __builtin_popcountll(u);
    if (size <= best) continue;
    bool free = std::none_of(supports.begin(), supports.end(),
                             [u](std::uint32_t m) { return (m & ~static_cast<std::uint32_t>(u)) == 0; });
    if (free) best = size;
  }
  return best;
}

Ideal::Ideal(std::size_t nvars, std::vector<Polynomial> generators) : nvars_(nvars), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (g.nvars() != nvars_) throw DomainError("coxcalc.ring", "generator in the wrong ring");
}

const std::vector<Polynomial>& Ideal::basis(MonomialOrder order) const {
  auto& slot = order == MonomialOrder::DegRevLex ? grevlex_ : lex_;
  if (!slot) slot = groebner_basis(gens_, order);
  return *slot;
}

bool Ideal::contains(const Polynomial& f) const { return reduce(f, basis()).is_zero(); }

bool Ideal::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b.front().total_degree() == 0;
}

int Ideal::dimension() const {
  std::vector<Exponents> lead;
  for (const auto& g : basis()) lead.push_back(g.leading_exponents());
  return monomial_ideal_dimension(nvars_, lead);
}

Ideal Ideal::operator+(const Ideal& o) const {
  if (o.nvars_ != nvars_) throw DomainError("coxcalc.ring", "sum of ideals in different rings");
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return Ideal(nvars_, std::move(g));
}

int Ideal::dimension_outside(const std::vector<RaySet>& collections) const {
  const int d0 = dimension();
  if (d0 < 0) return -1;
  int dz = -1;
  for (const auto& c : collections) {
    std::vector<Polynomial> g = gens_;
    for (auto i : c) g.push_back(Polynomial::variable(nvars_, i));
    dz = std::max(dz, Ideal(nvars_, std::move(g)).dimension());
  }
  if (d0 > dz) return d0;
  // The complement of Z is the union over transversals T (one variable from
  // each collection) of {x_T != 0}; each piece is V(I, 1 - y x_T) in one
  // more variable, which has the same dimension as V(I) minus {x_T = 0}.
  std::set<std::set<std::size_t>> transversals{{}};
  for (const auto& c : collections) {
    std::set<std::set<std::size_t>> next;
    for (const auto& t : transversals)
      for (auto i : c) {
        auto u = t;
        u.insert(i);
        next.insert(std::move(u));
      }
    // keep only inclusion-minimal sets
    std::set<std::set<std::size_t>> minimal;
    for (const auto& t : next) {
      bool dominated = std::any_of(next.begin(), next.end(), [&](const auto& o) {
        return o != t && std::includes(t.begin(), t.end(), o.begin(), o.end());
      });
      if (!dominated) minimal.insert(t);
    }
    transversals = std::move(minimal);
  }
  int best = -1;
  for (const auto& t : transversals) {
    std::vector<Polynomial> g;
    for (const auto& p : gens_) g.push_back(p.extend(nvars_ + 1));
    Exponents m(nvars_ + 1, 0);
    for (auto i : t) m[i] = 1;
    m[nvars_] = 1;
    g.push_back(Polynomial::constant(nvars_ + 1, 1) - Polynomial::monomial(m));
    best = std::max(best, Ideal(nvars_ + 1, std::move(g)).dimension());
  }
  return best;
}

int dimension_outside_irrelevant(const Ideal& ideal, const std::vector<RaySet>& collections) {
  return ideal.dimension_outside(collections);
}

std::optional<std::size_t> codim_in_variety(const Ideal& ideal, const Fan& fan) {
  if (ideal.nvars() != fan.num_rays()) throw DomainError("coxcalc.ring", "ideal does not live in the Cox ring");
  const int d = ideal.dimension_outside(primitive_collections(fan));
  if (d < 0) return std::nullopt;
  return ideal.nvars() - static_cast<std::size_t>(d);
}

}  // namespace toricfol
