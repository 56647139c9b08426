#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toricfol/lattice.hpp"

namespace toricfol {

/// Sorted set of 0-based ray indices. Ray i is the divisor D_{i+1} and the
/// Cox variable x_{i+1} in 1-based external notation.
using RaySet = std::vector<std::size_t>;

/// A simplicial fan given by primitive rays and maximal cones.
///
/// Construction checks the structural invariants (primitive, distinct rays;
/// in-range, linearly independent cone generators) and throws DomainError
/// naming the offending ray or cone. Smoothness and completeness are
/// properties reported by validate(), not invariants of the type.
class Fan {
 public:
  Fan() = default;
  Fan(std::size_t dim, std::vector<IntVector> rays, std::vector<RaySet> max_cones);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_rays() const noexcept { return rays_.size(); }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const IntVector& ray(std::size_t i) const { return rays_.at(i); }
  const std::vector<RaySet>& max_cones() const noexcept { return max_cones_; }

  /// True if `cone` (any order) is a face of some maximal cone.
  bool is_cone(const RaySet& cone) const;

  /// The (num_rays x dim) matrix of the map M -> Div_T, m -> (<m, u_i>)_i.
  IntMatrix pairing_matrix() const;

  friend bool operator==(const Fan&, const Fan&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<RaySet> max_cones_;
};

struct FanReport {
  bool smooth = false;
  bool complete = false;
  bool has_fixed_point = false;
  /// Human-readable reasons for each failed property.
  std::vector<std::string> notes;
};

/// Completeness uses exact wall/adjacency checks plus `kCompletenessSamples`
/// seeded pseudorandom directions, each of which must land in a max cone.
inline constexpr int kCompletenessSamples = 64;
FanReport validate(const Fan& fan, std::uint64_t seed = 0);

/// Throws DomainError("fan.smooth_complete", ...) unless smooth, complete and
/// with a torus fixed point.
void require_smooth_complete(const Fan& fan, std::uint64_t seed = 0);

/// Star subdivision at `cone`; the new ray is appended as the last index.
/// A single-ray cone returns the fan unchanged.
Fan star_subdivision(const Fan& fan, const RaySet& cone);

/// Rays of `a` come first, then rays of `b`, block-embedded in Z^{n_a+n_b}.
Fan product(const Fan& a, const Fan& b);

struct StarQuotient {
  Fan fan;
  /// fan ray r corresponds to input divisor ray_correspondence[r]
  std::vector<std::size_t> ray_correspondence;
  /// (dim - |tau|) x dim integer matrix realizing N -> N / <tau>
  IntMatrix quotient_map;
};

/// The fan Star(tau) of the orbit closure D_tau in the quotient lattice.
StarQuotient star_quotient(const Fan& fan, const RaySet& tau);

/// Minimal ray sets not contained in any cone, sorted by (size, lex).
std::vector<RaySet> primitive_collections(const Fan& fan);

/// Relabel rays: new ray k is old ray perm[k].
Fan permute_rays(const Fan& fan, const std::vector<std::size_t>& perm);

/// Equality of fans up to the order of maximal cones.
bool same_fan(const Fan& a, const Fan& b);

// Catalog -------------------------------------------------------------------

Fan point_fan();
/// Rays e_1..e_n, -(e_1+...+e_n).
Fan projective_space(std::size_t n);
/// Rays e_1..e_n, e_1+...+e_n (exceptional), -(e_1+...+e_n). This is the
/// star subdivision of P^n at Cone(e_1..e_n) with the last two rays swapped
/// so that index n+1 (0-based n) is the exceptional divisor.
Fan blowup_projective_space(std::size_t n);
/// Rays e_1, e_2, -e_2, -e_1 + r e_2.
Fan hirzebruch(int r);

}  // namespace toricfol
