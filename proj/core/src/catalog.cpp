#include <algorithm>

#include "toricfol/error.hpp"
#include "toricfol/fan.hpp"

namespace toricfol {

namespace {

std::vector<RaySet> all_but_one(std::size_t count) {
  std::vector<RaySet> cones;
  for (std::size_t skip = 0; skip < count; ++skip) {
    RaySet c;
    for (std::size_t i = 0; i < count; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return cones;
}

}  // namespace

Fan point_fan() { return Fan(0, {}, {RaySet{}}); }

Fan projective_space(std::size_t n) {
  if (n == 0) return point_fan();
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVector(n, Integer(-1)));
  return Fan(n, std::move(rays), all_but_one(n + 1));
}

Fan blowup_projective_space(std::size_t n) {
  if (n < 2) throw DomainError("fan.dimension", "blow-up of P^n at a point needs n >= 2");
  RaySet sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
  Fan sub = star_subdivision(projective_space(n), sigma);
  // star_subdivision appends the exceptional ray after -(e_1+..+e_n)
  std::vector<std::size_t> perm(n + 2);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  perm[n] = n + 1;
  perm[n + 1] = n;
  return permute_rays(sub, perm);
}

Fan hirzebruch(int r) {
  std::vector<IntVector> rays = {
      {Integer(1), Integer(0)}, {Integer(0), Integer(1)}, {Integer(0), Integer(-1)}, {Integer(-1), Integer(r)}};
  std::vector<RaySet> cones = {{0, 1}, {1, 3}, {2, 3}, {0, 2}};
  return Fan(2, std::move(rays), std::move(cones));
}

}  // namespace toricfol
