#pragma once

#include <optional>
#include <vector>

#include "toricfol/fan.hpp"
#include "toricfol/forms.hpp"
#include "toricfol/ideals.hpp"
#include "toricfol/picard.hpp"

namespace toricfol {

/// R_t = sum_i a^t_i x_i d/dx_i, a^t = row t of the degree matrix; degree 0.
std::vector<VectorField> radial_fields(const DegreeData& dd);

/// A split distribution given by fields X_1..X_k (k = n - q) and the form
/// omega = iota_{X_1} ... iota_{X_k} iota_{R_1} ... iota_{R_s} Omega.
struct SplitData {
  std::vector<VectorField> fields;
  /// alpha_i = -deg(X_i), so X_i is a section of TX(-alpha_i)
  std::vector<MultiDegree> alphas;
  DiffForm omega;
  std::size_t q = 0;
  /// Cox degree of omega: sum_i deg(X_i) - omega_X
  MultiDegree cox_degree;
  /// sum_i alpha_i + omega_X, which equals -cox_degree
  MultiDegree label;
  std::optional<MultiDegree> euler;
};

/// Builds omega from graded fields. Throws DomainError("foliation.omega_zero")
/// when omega vanishes identically and "foliation.field_degree" for fields
/// without a degree.
SplitData build_omega(const DegreeData& dd, std::vector<VectorField> fields);

/// omega is quasi-homogeneous and iota_{R_t} omega = 0 for all t (true for 0).
bool check_descent(const DiffForm& omega, const DegreeData& dd);

/// iota_v omega ^ omega = 0 for all coordinate (q-1)-multivectors v.
bool check_ldc(const DiffForm& omega);
/// iota_v omega ^ d omega = 0 for all coordinate (q-1)-multivectors v.
bool check_integrability(const DiffForm& omega);

/// iota_{[X_i, X_j]} omega = 0 for i < j, where omega = Phi(fields). Since
/// Y -> iota_Y Omega identifies multivectors with forms, this is the vanishing
/// of [X_i, X_j] ^ X_1 ^ ... ^ X_k ^ R_1 ^ ... ^ R_s.
bool involutivity_check(const DegreeData& dd, const std::vector<VectorField>& fields);

/// Integers c_t with iota_{R_t} d omega = c_t omega; asserts c = deg(omega)
/// ("foliation.euler" otherwise). Stores the result in sd.euler.
MultiDegree euler_coefficients(SplitData& sd, const DegreeData& dd);

struct LemmaDiffResult {
  SplitData data;
  /// f_i with iota_{X_i} d omega = (-1)^(i+1) f_i omega (1-based i)
  std::vector<Polynomial> f;
  /// coefficients b_t of the radial correction
  std::vector<Rational> b;
};

/// Replaces X_i by X_i + (-1)^i f_i sum_t b_t R_t with sum_t c_t b_t = 1, so
/// that omega is unchanged and
///   d omega = sum_t (-1)^(k+t-1) c_t iota_X iota_{R^_t} Omega.
/// Both identities are checked before returning. Errors:
/// "foliation.exact_division" if some iota_{X_i} d omega is not a polynomial
/// multiple of omega, "foliation.lemma_diff_system" if no b exists.
LemmaDiffResult normalize_lemma_diff(const SplitData& sd, const DegreeData& dd);

/// Checks the identity above for the given fields.
bool lemma_diff_identity_holds(const SplitData& sd, const DegreeData& dd);

/// The ideal of maximal minors of the matrix with columns X_1..X_k, R_1..R_s.
/// Minors are cross-checked against the coefficients of omega
/// ("foliation.minors" on mismatch).
Ideal singular_ideal(const SplitData& sd, const DegreeData& dd);

/// Whether d omega(p) != 0, for a point p outside Z with omega(p) = 0.
/// Errors: "foliation.kupka_irrelevant" (p in Z),
/// "foliation.kupka_not_singular" (omega(p) != 0).
bool kupka_test(const DiffForm& omega, const std::vector<GaussianRational>& p, const Fan& fan);
bool kupka_test(const DiffForm& omega, const RatVector& p, const Fan& fan);

/// sum_j (-1)^(j-1) iota_{Z_j} iota_{X^_j} iota_R Omega, i.e. the derivative
/// of Phi at the fields of sd in direction Z. "foliation.dphi_degree" if some
/// nonzero Z_j is not homogeneous of degree deg(X_j).
DiffForm dPhi(const SplitData& sd, const DegreeData& dd, const std::vector<VectorField>& directions);

enum class TangentCondition {
  /// linearization of the integrability condition
  Linearized,
  /// d omega ^ d eta = 0 in place of the linearized integrability condition
  ClosedDifferentials,
};

struct DeformationOptions {
  TangentCondition integrability = TangentCondition::Linearized;
};

/// Basis of the homogeneous q-forms eta of degree deg(omega) with
/// iota_{R_t} eta = 0, satisfying the linearized decomposability condition
///   iota_v eta ^ omega + iota_v omega ^ eta = 0
/// and, when omega is integrable, the linearized integrability condition
///   iota_v eta ^ d omega + iota_v omega ^ d eta = 0.
std::vector<DiffForm> deformation_space(const SplitData& sd, const DegreeData& dd,
                                        const DeformationOptions& options = {});

struct StabilityReport {
  std::size_t deformation_dim = 0;
  /// rank of the span of dPhi over monomial directions together with omega
  std::size_t full_image_rank = 0;
  /// rank of that span intersected with the deformation space, i.e. the image
  /// of the directions whose first-order deformation stays admissible
  std::size_t image_rank = 0;
  /// deformation_dim - image_rank
  long gap = 0;
  bool omega_in_image = false;
  /// whether every direction is admissible
  bool image_in_deformations = false;
  /// codim in X of the set the hypothesis is about: S for q >= 2, the
  /// locus V(singular ideal + coefficients of d omega) for q = 1; nullopt
  /// means empty
  std::optional<std::size_t> hypothesis_codim;
  bool hypothesis_holds = false;
};

/// Codimension of V(singular ideal + coefficients of d omega) in X, a
/// superset of the non-Kupka singular points; nullopt if empty.
std::optional<std::size_t> kupka_complement_codim(const SplitData& sd, const DegreeData& dd, const Fan& fan);

/// deformation_dim - image_rank, reported together with the hypotheses of the
/// stability statements; the value is never assumed. The image is spanned by
/// dPhi over monomial directions in every slot together with omega.
StabilityReport stability_gap(const SplitData& sd, const DegreeData& dd, const Fan& fan,
                              const DeformationOptions& options = {});

}  // namespace toricfol
