#include "toricfol/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "toricfol/error.hpp"

namespace toricfol {

namespace {

std::string cone_str(const RaySet& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i] + 1);
  return s + "}";
}

std::string vec_str(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

IntMatrix ray_matrix(const Fan& fan, const RaySet& cone) {
  IntMatrix m(cone.size(), fan.dim());
  for (std::size_t r = 0; r < cone.size(); ++r)
    for (std::size_t j = 0; j < fan.dim(); ++j) m(r, j) = fan.ray(cone[r])[j];
  return m;
}

bool subset_of(const RaySet& a, const RaySet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

RaySet sorted(RaySet c) {
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

Fan::Fan(std::size_t dim, std::vector<IntVector> rays, std::vector<RaySet> max_cones)
    : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].size() != dim_)
      throw DomainError("fan.ray_dimension", "ray " + std::to_string(i + 1) + " has " +
                                                 std::to_string(rays_[i].size()) + " entries, expected " +
                                                 std::to_string(dim_));
    if (!is_primitive(rays_[i]))
      throw DomainError("fan.primitive_rays", "ray " + std::to_string(i + 1) + " " + vec_str(rays_[i]) +
                                                  " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (rays_[j] == rays_[i])
        throw DomainError("fan.distinct_rays", "rays " + std::to_string(j + 1) + " and " +
                                                   std::to_string(i + 1) + " coincide");
  }
  for (auto& cone : max_cones_) {
    RaySet original = cone;
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
      throw DomainError("fan.cone_index", "cone " + cone_str(original) + " repeats a ray");
    for (auto i : cone)
      if (i >= rays_.size())
        throw DomainError("fan.cone_index", "cone " + cone_str(original) + " references ray " +
                                                std::to_string(i + 1) + " but the fan has " +
                                                std::to_string(rays_.size()) + " rays");
    if (cone.size() > dim_ || rank(ray_matrix(*this, cone)) != cone.size())
      throw DomainError("fan.simplicial", "cone " + cone_str(original) + " has linearly dependent rays");
  }
}

bool Fan::is_cone(const RaySet& cone) const {
  RaySet c = sorted(cone);
  return std::any_of(max_cones_.begin(), max_cones_.end(), [&](const RaySet& m) { return subset_of(c, m); });
}

IntMatrix Fan::pairing_matrix() const {
  IntMatrix m(rays_.size(), dim_);
  for (std::size_t i = 0; i < rays_.size(); ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = rays_[i][j];
  return m;
}

FanReport validate(const Fan& fan, std::uint64_t seed) {
  FanReport rep;
  const std::size_t n = fan.dim();

  rep.smooth = true;
  for (const auto& cone : fan.max_cones()) {
    SmithForm s = smith_normal_form(ray_matrix(fan, cone));
    auto f = s.invariant_factors();
    if (s.rank != cone.size() || std::any_of(f.begin(), f.end(), [](const Integer& d) { return d != 1; })) {
      rep.smooth = false;
      rep.notes.push_back("cone " + cone_str(cone) + " is not unimodular");
    }
  }

  rep.has_fixed_point = std::any_of(fan.max_cones().begin(), fan.max_cones().end(),
                                    [&](const RaySet& c) { return c.size() == n; });
  if (!rep.has_fixed_point) rep.notes.push_back("no cone of full dimension");

  // (a) every max cone is full-dimensional
  bool complete = !fan.max_cones().empty();
  for (const auto& cone : fan.max_cones())
    if (cone.size() != n) {
      complete = false;
      rep.notes.push_back("cone " + cone_str(cone) + " is not full-dimensional");
    }
  // (b) every wall lies in exactly two max cones, (c) adjacency graph connected
  const auto& cones = fan.max_cones();
  std::vector<std::size_t> parent(cones.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (complete && n > 0) {
    for (std::size_t a = 0; a < cones.size() && complete; ++a)
      for (std::size_t drop = 0; drop < n; ++drop) {
        RaySet wall = cones[a];
        wall.erase(wall.begin() + static_cast<std::ptrdiff_t>(drop));
        std::vector<std::size_t> holders;
        for (std::size_t b = 0; b < cones.size(); ++b)
          if (subset_of(wall, cones[b])) holders.push_back(b);
        if (holders.size() != 2) {
          complete = false;
          rep.notes.push_back("wall " + cone_str(wall) + " lies in " + std::to_string(holders.size()) +
                              " maximal cones");
          break;
        }
        parent[find(holders[0])] = find(holders[1]);
      }
    if (complete)
      for (std::size_t a = 1; a < cones.size(); ++a)
        if (find(a) != find(0)) {
          complete = false;
          rep.notes.push_back("wall adjacency graph is disconnected");
          break;
        }
  }
  // (d) seeded random directions
  if (complete && n > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    std::vector<RatMatrix> inverses;
    for (const auto& cone : cones) {
      auto inv = inverse(to_rational(ray_matrix(fan, cone)).transpose());
      inverses.push_back(inv.value_or(RatMatrix()));
    }
    for (int k = 0; k < kCompletenessSamples && complete; ++k) {
      RatVector v(n);
      bool nonzero = false;
      while (!nonzero) {
        for (auto& x : v) {
          x = Rational(dist(rng), 1 + (dist(rng) & 0x3f));
          if (x != 0) nonzero = true;
        }
      }
      bool inside = false;
      for (const auto& inv : inverses) {
        if (inv.rows() == 0) continue;
        auto coeffs = inv.apply(v);
        if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c >= 0; })) {
          inside = true;
          break;
        }
      }
      if (!inside) {
        complete = false;
        rep.notes.push_back("sampled direction lies outside the support");
      }
    }
  }
  rep.complete = complete;
  return rep;
}

void require_smooth_complete(const Fan& fan, std::uint64_t seed) {
  FanReport rep = validate(fan, seed);
  if (rep.smooth && rep.complete && rep.has_fixed_point) return;
  std::string why;
  for (const auto& n : rep.notes) why += (why.empty() ? "" : "; ") + n;
  throw DomainError("fan.smooth_complete", why);
}

Fan star_subdivision(const Fan& fan, const RaySet& cone_in) {
  RaySet cone = sorted(cone_in);
  if (cone.empty() || !fan.is_cone(cone))
    throw DomainError("fan.cone_in_fan", "cone " + cone_str(cone) + " is not a cone of the fan");
  if (cone.size() == 1) return fan;

  IntVector added(fan.dim());
  for (auto i : cone)
    for (std::size_t j = 0; j < fan.dim(); ++j) added[j] += fan.ray(i)[j];
  std::vector<IntVector> rays = fan.rays();
  rays.push_back(added);
  const std::size_t new_index = rays.size() - 1;

  std::vector<RaySet> cones;
  for (const auto& sigma : fan.max_cones()) {
    if (!subset_of(cone, sigma)) {
      cones.push_back(sigma);
      continue;
    }
    for (auto i : cone) {
      RaySet c;
      for (auto j : sigma)
        if (j != i) c.push_back(j);
      c.push_back(new_index);
      cones.push_back(sorted(c));
    }
  }
  return Fan(fan.dim(), std::move(rays), std::move(cones));
}

Fan product(const Fan& a, const Fan& b) {
  const std::size_t n = a.dim() + b.dim();
  std::vector<IntVector> rays;
  for (const auto& r : a.rays()) {
    IntVector v(n);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(v);
  }
  for (const auto& r : b.rays()) {
    IntVector v(n);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    rays.push_back(v);
  }
  std::vector<RaySet> cones;
  for (const auto& ca : a.max_cones())
    for (const auto& cb : b.max_cones()) {
      RaySet c = ca;
      for (auto j : cb) c.push_back(j + a.num_rays());
      cones.push_back(c);
    }
  return Fan(n, std::move(rays), std::move(cones));
}

StarQuotient star_quotient(const Fan& fan, const RaySet& tau_in) {
  RaySet tau = sorted(tau_in);
  if (!fan.is_cone(tau))
    throw DomainError("fan.cone_in_fan", "tau " + cone_str(tau) + " is not a cone of the fan");
  const std::size_t n = fan.dim();
  const std::size_t k = tau.size();

  IntMatrix B(n, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r) B(r, c) = fan.ray(tau[c])[r];
  SmithForm s = smith_normal_form(B);
  for (const auto& d : s.invariant_factors())
    if (d != 1) throw DomainError("fan.smooth", "tau " + cone_str(tau) + " is not part of a lattice basis");
  if (s.rank != k) throw DomainError("fan.simplicial", "tau " + cone_str(tau) + " has dependent rays");

  StarQuotient out;
  out.quotient_map = IntMatrix(n - k, n);
  for (std::size_t r = k; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) out.quotient_map(r - k, j) = s.U(r, j);

  std::set<std::size_t> link;
  std::vector<RaySet> star;
  for (const auto& sigma : fan.max_cones())
    if (subset_of(tau, sigma)) {
      star.push_back(sigma);
      for (auto i : sigma)
        if (!std::binary_search(tau.begin(), tau.end(), i)) link.insert(i);
    }
  std::map<std::size_t, std::size_t> index;
  std::vector<IntVector> rays;
  for (auto i : link) {
    index[i] = rays.size();
    out.ray_correspondence.push_back(i);
    rays.push_back(out.quotient_map.apply(fan.ray(i)));
  }
  std::vector<RaySet> cones;
  for (const auto& sigma : star) {
    RaySet c;
    for (auto i : sigma)
      if (!std::binary_search(tau.begin(), tau.end(), i)) c.push_back(index.at(i));
    cones.push_back(sorted(c));
  }
  out.fan = Fan(n - k, std::move(rays), std::move(cones));
  return out;
}

std::vector<RaySet> primitive_collections(const Fan& fan) {
  const std::size_t N = fan.num_rays();
  if (N > 24) throw DomainError("fan.size", "primitive collections enumerated only up to 24 rays");
  std::vector<std::uint32_t> cone_masks;
  for (const auto& c : fan.max_cones()) {
    std::uint32_t m = 0;
    for (auto i : c) m |= 1u << i;
    cone_masks.push_back(m);
  }
  auto is_face = [&](std::uint32_t m) {
    return std::any_of(cone_masks.begin(), cone_masks.end(), [&](std::uint32_t c) { return (m & ~c) == 0; });
  };
  std::vector<RaySet> out;
  for (std::uint32_t m = 1; m < (1u << N); ++m) {
    if (is_face(m)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < N && minimal; ++i)
      if ((m >> i) & 1u)
        if (!is_face(m & ~(1u << i))) minimal = false;
    if (!minimal) continue;
    RaySet s;
    for (std::size_t i = 0; i < N; ++i)
      if ((m >> i) & 1u) s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const RaySet& a, const RaySet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

Fan permute_rays(const Fan& fan, const std::vector<std::size_t>& perm) {
  if (perm.size() != fan.num_rays()) throw DomainError("fan.permutation", "wrong length");
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv.at(perm[k]) = k;
  std::vector<IntVector> rays;
  for (auto p : perm) rays.push_back(fan.ray(p));
  std::vector<RaySet> cones;
  for (const auto& c : fan.max_cones()) {
    RaySet d;
    for (auto i : c) d.push_back(inv[i]);
    cones.push_back(sorted(d));
  }
  return Fan(fan.dim(), std::move(rays), std::move(cones));
}

bool same_fan(const Fan& a, const Fan& b) {
  if (a.dim() != b.dim() || a.rays() != b.rays()) return false;
  auto ca = a.max_cones();
  auto cb = b.max_cones();
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

}  // namespace toricfol
