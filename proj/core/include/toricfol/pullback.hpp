#pragma once

#include <map>
#include <optional>
#include <vector>

#include "toricfol/fan.hpp"
#include "toricfol/foliation.hpp"
#include "toricfol/ideals.hpp"
#include "toricfol/picard.hpp"

namespace toricfol {

/// Operator T_j as (variable, coefficient) pairs.
using LinearForm = std::vector<std::pair<std::size_t, Rational>>;

/// A dominant rational map X -> D_S lifting to linear forms T_j in Cox
/// coordinates, one for each divisor D_j meeting D_S (j not in S).
struct EquivariantProjection {
  RaySet S;
  StarQuotient quotient;
  DegreeData target_grading;
  /// J[r] is the divisor of X whose class restricts to target variable y_r
  std::vector<std::size_t> J;
  /// divisors disjoint from D_S
  std::vector<std::size_t> W;
  /// T_{J[r]} as a linear polynomial in the Cox ring of X
  std::vector<Polynomial> operators;
  /// invertible block-diagonal matrix with row J[r] = T_{J[r]} and unit
  /// completions elsewhere, so that x' = A x are adapted coordinates
  RatMatrix adapted;
  /// s x s_S matrix of Pic(D_S) -> Pic(X), phi(deg y_r) = deg x_{J[r]}
  IntMatrix pic_map;
  /// product over primitive collections c of D_S of (T_{J[r]} : r in c)
  Ideal indeterminacy{0};
  std::optional<std::size_t> indeterminacy_codim;

  MultiDegree push_degree(const MultiDegree& target_degree) const;
};

struct ProjectionOptions {
  /// additionally require maximal divisors in S and dim D_S >= 2
  bool strict_mode = false;
};

/// Validates and builds a projection. Missing operators default to T_j = x_j,
/// operators on divisors disjoint from D_S are ignored. Errors name the
/// invariant: pullback.cone, pullback.operator_on_S, pullback.degree,
/// pullback.dependent, pullback.pic_map, pullback.indeterminacy,
/// pullback.maximal, pullback.dimension.
EquivariantProjection make_projection(const DegreeData& dd, const Fan& fan, const RaySet& S,
                                      const std::map<std::size_t, LinearForm>& operators = {},
                                      const ProjectionOptions& options = {});

/// Substitutes y_r -> T_{J[r]}(x) in coefficients and differentials.
DiffForm pullback_form(const EquivariantProjection& p, const DegreeData& dd, const DiffForm& omega);

struct PullbackSplitting {
  /// phi(alpha_i) for the target summands, then deg(x_i) for i in S
  std::vector<MultiDegree> summands;
  /// kernel fields of the lift: constant combinations of d/dx_k inside the
  /// classes of S
  std::vector<VectorField> fiber_fields;
};

/// Splitting type of the pulled back tangent sheaf, from the target's
/// summand degrees alpha_i (fields of degree -alpha_i).
PullbackSplitting pullback_splitting(const EquivariantProjection& p, const DegreeData& dd,
                                     const std::vector<MultiDegree>& target_alphas);

struct PulledBackSplitData {
  /// lifted target fields followed by the fiber fields
  SplitData data;
  /// data.omega = factor * pullback_form(target omega); factor is a constant
  /// times a monomial in the variables of W
  Polynomial factor;
};

/// Split presentation of the pulled back foliation on X.
PulledBackSplitData pullback_split_data(const EquivariantProjection& p, const DegreeData& dd,
                                        const SplitData& target);

struct Recognition {
  EquivariantProjection projection;
  SplitData target;
  /// indices into the input fields used as fiber fields
  std::vector<std::size_t> fiber_fields;
  /// sd.omega = factor * pullback_form(projection, target.omega)
  Polynomial factor;
};

/// Every S (cones of maximal divisors with a nonvanishing minor of the
/// constant fiber-field matrix) for which the split foliation is the
/// pullback of a foliation on D_S, largest S first, each one validated by an
/// exact roundtrip.
std::vector<Recognition> recognize_pullback_all(const SplitData& sd, const DegreeData& dd, const Fan& fan);
/// The first element of recognize_pullback_all, or nullopt.
std::optional<Recognition> recognize_pullback(const SplitData& sd, const DegreeData& dd, const Fan& fan);

}  // namespace toricfol
